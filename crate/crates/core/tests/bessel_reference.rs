//! Scaled Bessel values against a frozen 40-digit reference table.

#![allow(clippy::excessive_precision)]

use boundary_particle::specfun::{bessel_i_scaled, bessel_k_scaled, BesselOrder};

/// (2ν, z, e^{-z} I_ν(z), e^{z} K_ν(z)), computed offline with an
/// arbitrary-precision library.
const REFERENCE: &[(i32, f64, f64, f64)] = &[
    (0, 1e-8, 9.99999990000000075e-1, 1.8536612444976901932e+1),
    (0, 0.001, 9.990007495835155594e-1, 7.0307160023782515185),
    (0, 0.1, 9.0710092578230109644e-1, 2.6823261022628943831),
    (0, 1.0, 4.657596075936404365e-1, 1.1444630798068950147),
    (0, 2.0, 3.0850832255367103953e-1, 8.4156821507077141792e-1),
    (0, 5.0, 1.8354081260932835307e-1, 5.4780756431351898687e-1),
    (0, 20.0, 8.9780311884826021596e-2, 2.7854487665718222393e-1),
    (0, 24.9, 8.0359332611532211307e-2, 2.4993215015402473119e-1),
    (0, 25.1, 8.0035197254296238736e-2, 2.4894399546328754006e-1),
    (0, 50.0, 5.656162664745419253e-2, 1.7680715585742933811e-1),
    (0, 100.0, 3.9944379299096682648e-2, 1.2517562165912657889e-1),
    (0, 700.0, 1.5081295651531357587e-2, 4.7362369454613572112e-2),
    (0, 1999.0, 8.9234096868535681054e-3, 2.803021256818418816e-2),
    (
        0,
        2001.0,
        8.9189485391654723609e-3,
        2.8016202714063664658e-2,
    ),
    (0, 5000.0, 5.642036898744588657e-3, 1.7724095445432316158e-2),
    (1, 1e-8, 7.9788455282401980104e-5, 1.2533141373155002512e+4),
    (1, 0.001, 2.5206110707457800332e-2, 3.9633272976060110133e+1),
    (1, 0.1, 2.2868316607552338351e-1, 3.9633272976060110133),
    (1, 1.0, 3.4495131388824462599e-1, 1.2533141373155002512),
    (1, 2.0, 2.7692804543535513001e-1, 8.8622692545275801365e-1),
    (1, 5.0, 1.7840431170432102234e-1, 5.6049912163979286993e-1),
    (1, 20.0, 8.9206205807638555348e-2, 2.8024956081989643497e-1),
    (1, 24.9, 7.99485133245580846e-2, 2.5116566212585737564e-1),
    (1, 25.1, 7.9629356308658481317e-2, 2.5016300078936554112e-1),
    (1, 50.0, 5.6418958354775628695e-2, 1.7724538509055160273e-1),
    (1, 100.0, 3.9894228040143267794e-2, 1.2533141373155002512e-1),
    (1, 700.0, 1.5078600877302686163e-2, 4.737082174254673015e-2),
    (
        1,
        1999.0,
        8.9228515725658402453e-3,
        2.8031964949444977599e-2,
    ),
    (
        1,
        2001.0,
        8.9183912615785346974e-3,
        2.8017952469214532652e-2,
    ),
    (
        1,
        5000.0,
        5.6418958354775628695e-3,
        1.7724538509055160273e-2,
    ),
    (2, 1e-8, 4.9999999500000003125e-9, 1.0000000099999990982e+8),
    (2, 0.001, 4.9950031235422133698e-4, 1.0009967345590684524e+3),
    (2, 0.1, 4.5298446808809325007e-2, 1.0890182683049696574e+1),
    (2, 1.0, 2.0791041534970844887e-1, 1.6361534862632582465),
    (2, 2.0, 2.1526928924893765916e-1, 1.0334768470686885732),
    (2, 5.0, 1.6397226694454235693e-1, 6.0027385878831258294e-1),
    (2, 20.0, 8.7506222183288665356e-2, 2.8542549694072644517e-1),
    (2, 24.9, 7.8728794882103127024e-2, 2.5490238558081707858e-1),
    (2, 25.1, 7.8424315178368416033e-2, 2.5385550089505652117e-1),
    (2, 50.0, 5.5993123892895399644e-2, 1.785665585588155746e-1),
    (2, 100.0, 3.9744153025130252674e-2, 1.2579995047957852933e-1),
    (2, 700.0, 1.5070519444716846949e-2, 4.7396187653494544137e-2),
    (
        2,
        1999.0,
        8.9211774391722863181e-3,
        2.8037222750473112795e-2,
    ),
    (
        2,
        2001.0,
        8.9167196377642005656e-3,
        2.8023202390272250481e-2,
    ),
    (
        2,
        5000.0,
        5.6414726668388859036e-3,
        1.7725867766374100722e-2,
    ),
    (
        3,
        1e-8,
        2.6596151760800659857e-13,
        1.2533141498486416244e+12,
    ),
    (3, 0.001, 8.4020363423501932912e-6, 3.9672906249036170244e+4),
    (3, 0.1, 7.6176951894028295956e-3, 4.3596600273666121147e+1),
    (3, 1.0, 1.079819330263761039e-1, 2.5066282746310005024),
    (3, 2.0, 1.4879751539472359193e-1, 1.3293403881791370205),
    (3, 5.0, 1.427396491853689961e-1, 6.7259894596775144392e-1),
    (3, 20.0, 8.4745895517256628339e-2, 2.9426203886089125671e-1),
    (3, 24.9, 7.6737729656905149476e-2, 2.6125263650842192887e-1),
    (3, 25.1, 7.6456871993572486045e-2, 2.6012965420726855073e-1),
    (3, 50.0, 5.5290579187680116121e-2, 1.8079029279236263478e-1),
    (3, 100.0, 3.9495285759741835116e-2, 1.2658472786886552537e-1),
    (3, 700.0, 1.5057060018906539468e-2, 4.7438494345036082621e-2),
    (
        3,
        1999.0,
        8.9183879149507497799e-3,
        2.8045987943416685942e-2,
    ),
    (
        3,
        2001.0,
        8.9139342944313190379e-3,
        2.8031954444461516426e-2,
    ),
    (
        3,
        5000.0,
        5.6407674563104673569e-3,
        1.7728083416756971305e-2,
    ),
    (4, 1e-8, 1.2499999875000000729e-17, 2.00000002000000005e+16),
    (4, 0.001, 1.2487507288542740575e-7, 2.0020004998341392831e+6),
    (4, 0.1, 1.1319896061145962936e-3, 2.2048597976325682587e+2),
    (4, 1.0, 4.9938776894223538763e-2, 4.4167700523334115077),
    (4, 2.0, 9.3239033304733380375e-2, 1.8750450621394599911),
    (4, 5.0, 1.179519058315114103e-1, 7.8791710782884402004e-1),
    (4, 20.0, 8.102968966649715506e-2, 3.0708742635125486845e-1),
    (4, 24.9, 7.4035734629033968173e-2, 2.7040623734927108289e-1),
    (4, 25.1, 7.3786247837693177698e-2, 2.6917152541508487243e-1),
    (4, 50.0, 5.4321901691738376544e-2, 1.839498181997819611e-1),
    (4, 100.0, 3.9149496238594077594e-2, 1.2769162066871814948e-1),
    (4, 700.0, 1.503823702454645231e-2, 4.7497787133623556524e-2),
    (
        4,
        1999.0,
        8.9144840465942661681e-3,
        2.8058263816558848603e-2,
    ),
    (4, 2001.0, 8.9100362756594611659e-3, 2.804421191185504122e-2),
    (
        4,
        5000.0,
        5.6397803096778531026e-3,
        1.7731185792538865798e-2,
    ),
    (
        7,
        1e-8,
        7.5989005030859027826e-31,
        1.8799712247729625117e+29,
    ),
    (
        7,
        0.001,
        2.4005817054075353706e-13,
        5.9509383157481368299e+11,
    ),
    (7, 0.1, 2.175517478047340343e-6, 6.5636663375653148392e+4),
    (7, 1.0, 2.9543589807945324711e-3, 4.6372623080673509295e+1),
    (7, 2.0, 1.4468084536549236659e-2, 8.5299341574827958814),
    (7, 5.0, 4.997912699226937143e-2, 1.6366574351881951802),
    (7, 20.0, 6.5622315147244113064e-2, 3.7535925552314878758e-1),
    (7, 24.9, 6.2540339350210250538e-2, 3.1800803477989427964e-1),
    (7, 25.1, 6.2414823237468531958e-2, 3.1615638618322830323e-1),
    (7, 50.0, 4.9980426827328633948e-2, 1.9959957305817197087e-1),
    (7, 100.0, 3.7559817286374284479e-2, 1.3304117564724632492e-1),
    (7, 700.0, 1.4949816657334548033e-2, 4.7778309556289325676e-2),
    (7, 1999.0, 8.896103104299032898e-3, 2.8116208190981402217e-2),
    (
        7,
        2001.0,
        8.8916828525466449906e-3,
        2.8102069335484560207e-2,
    ),
    (
        7,
        5000.0,
        5.6351289449354635803e-3,
        1.7745818592116076519e-2,
    ),
    (
        10,
        1e-8,
        2.6041666406250001411e-44,
        3.840000038400000168e+42,
    ),
    (
        10,
        0.001,
        2.6015639100479077119e-19,
        3.843841680400050002e+17,
    ),
    (10, 0.1, 2.3573294295782134557e-9, 4.2412050199178222979e+7),
    (10, 1.0, 9.9865714112086907179e-5, 9.8119261150291560166e+2),
    (10, 2.0, 1.3297610941881578142e-3, 6.9686550876076751184e+1),
    (10, 5.0, 1.4540318125234771271e-2, 4.8540414040762028051),
    (10, 20.0, 4.7444442493389080441e-2, 5.1129911061679665651e-1),
    (10, 24.9, 4.8223200929456484794e-2, 4.08315650481798491e-1),
    (10, 25.1, 4.822722081360814194e-2, 4.0515235143383262976e-1),
    (10, 50.0, 4.39474970246232708e-2, 2.2642553977184736939e-1),
    (
        10,
        100.0,
        3.5229468707741778512e-2,
        1.4175130151329507809e-1,
    ),
    (
        10,
        700.0,
        1.4814188973601688447e-2,
        4.8215104912462455463e-2,
    ),
    (
        10,
        1999.0,
        8.8677707250570494228e-3,
        2.8205994008053987564e-2,
    ),
    (
        10,
        2001.0,
        8.863392817055480274e-3,
        2.8191720185607738761e-2,
    ),
    (
        10,
        5000.0,
        5.6279480170604768312e-3,
        1.7768456673177406815e-2,
    ),
    (
        21,
        1e-8,
        5.8030877146290645157e-95,
        8.205812140148125596e+92,
    ),
    (
        21,
        0.001,
        1.8332633419620519252e-42,
        2.5975017506294072717e+40,
    ),
    (
        21,
        0.1,
        1.6608258744946661716e-21,
        2.8670596444021179282e+19,
    ),
    (21, 1.0, 2.1817131521715018351e-11, 2.1727254682752527429e+9),
    (21, 2.0, 1.240279676759717539e-8, 3.7710152335346449451e+6),
    (21, 5.0, 1.4538765735087069483e-5, 2.9556052115089894888e+3),
    (21, 20.0, 5.6746269581189777881e-3, 3.9006248753801937635),
    (21, 24.9, 8.682171358087905672e-3, 2.131170705775838586),
    (21, 25.1, 8.8003227662761888553e-3, 2.0883105085981532434),
    (21, 50.0, 1.8649293851108562471e-2, 5.2478604192993112925e-1),
    (
        21,
        100.0,
        2.2965008520541063545e-2,
        2.1653468281856173704e-1,
    ),
    (
        21,
        700.0,
        1.3938439053501125038e-2,
        5.1239995373102093622e-2,
    ),
    (
        21,
        1999.0,
        8.6806377505007891086e-3,
        2.8813737783863590319e-2,
    ),
    (
        21,
        2001.0,
        8.6765372354608613354e-3,
        2.8798542944998453093e-2,
    ),
    (
        21,
        5000.0,
        5.5801689509619889986e-3,
        1.7920564929037392536e-2,
    ),
    (
        40,
        1e-8,
        3.9199043104257477148e-185,
        6.3777067040916378752e+182,
    ),
    (
        40,
        0.001,
        3.9159864511930729704e-85,
        6.3840874528702715701e+82,
    ),
    (
        40,
        0.1,
        3.5472984018130205392e-45,
        7.0475285388869269061e+42,
    ),
    (
        40,
        1.0,
        1.4593174056818685961e-25,
        1.7109869854051396574e+23,
    ),
    (
        40,
        2.0,
        5.8337093647636210402e-20,
        4.2641185023500452805e+17,
    ),
    (
        40,
        5.0,
        3.3853058504733224062e-13,
        7.1639039625521650448e+10,
    ),
    (40, 20.0, 6.5725042913687706742e-6, 2.6893248401192639472e+3),
    (40, 24.9, 3.3118491153415362652e-5, 4.726788205753751771e+2),
    (40, 25.1, 3.4945768155673782604e-5, 4.4578382905263495724e+2),
    (40, 50.0, 1.0496272879428207033e-3, 8.8458769369347110492),
    (
        40,
        100.0,
        5.3879576269663273678e-3,
        9.0998287043350689149e-1,
    ),
    (
        40,
        700.0,
        1.1331156100250527673e-2,
        6.3011622314473496798e-2,
    ),
    (
        40,
        1999.0,
        8.0736356707501015232e-3,
        3.0978924826489350235e-2,
    ),
    (
        40,
        2001.0,
        8.0704067411323995956e-3,
        3.0960346602680257931e-2,
    ),
    (
        40,
        5000.0,
        5.4207880690083524521e-3,
        1.8447354745568052181e-2,
    ),
    (
        60,
        1e-8,
        3.5110745496265865371e-282,
        4.7468848727348205649e+279,
    ),
    (
        60,
        0.001,
        3.5075652933916711752e-132,
        4.7516340433626333683e+129,
    ),
    (
        60,
        0.1,
        3.1772078775728738494e-72,
        5.2456668288846042548e+69,
    ),
    (
        60,
        1.0,
        1.3021094983785914437e-42,
        1.2792629867539753925e+40,
    ),
    (
        60,
        2.0,
        5.2693058653954966758e-34,
        3.1559587808452645213e+31,
    ),
    (
        60,
        5.0,
        2.6937267526846668602e-23,
        6.1029451020974105899e+20,
    ),
    (
        60,
        20.0,
        1.6928762259616172392e-10,
        8.1910865525376814618e+7,
    ),
    (60, 24.9, 4.4299250072206866907e-9, 2.8948219824530815553e+6),
    (60, 25.1, 4.9489487561633001428e-9, 2.582745222540665097e+6),
    (60, 50.0, 8.2453933520899676429e-6, 1.0399569527030919633e+3),
    (60, 100.0, 4.4869877569209861457e-4, 1.067344344995485004e+1),
    (
        60,
        700.0,
        7.9267015540730095275e-3,
        9.0028723135501475851e-2,
    ),
    (
        60,
        1999.0,
        7.1243141614544931429e-3,
        3.5104699512379899257e-2,
    ),
    (
        60,
        2001.0,
        7.1223555107616242376e-3,
        3.5079264403134220169e-2,
    ),
    (
        60,
        5000.0,
        5.1563884455084965103e-3,
        1.9393069704740268394e-2,
    ),
];

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn scaled_i_matches_reference() {
    let mut worst = 0.0_f64;
    for &(twice, z, i_ref, _) in REFERENCE {
        let got = bessel_i_scaled(BesselOrder::from_twice(twice), z).unwrap();
        let err = rel(got, i_ref);
        worst = worst.max(err);
        assert!(
            err <= 1e-12,
            "I order {twice}/2 at z={z}: {got:e} vs {i_ref:e} (rel {err:e})"
        );
    }
    println!("worst relative error in e^-z I: {worst:e}");
}

#[test]
fn scaled_k_matches_reference() {
    let mut worst = 0.0_f64;
    for &(twice, z, _, k_ref) in REFERENCE {
        let got = bessel_k_scaled(BesselOrder::from_twice(twice), z).unwrap();
        let err = rel(got, k_ref);
        worst = worst.max(err);
        assert!(
            err <= 1e-12,
            "K order {twice}/2 at z={z}: {got:e} vs {k_ref:e} (rel {err:e})"
        );
    }
    println!("worst relative error in e^z K: {worst:e}");
}
