// Generated by tools/gen_airy_tables.py; do not edit by hand.

// Columns: x, Ai(x), Ai'(x), Bi(x), Bi'(x).
pub const AIRY_SAMPLES: [[f64; 5]; 29] = [
    [-95.0, 0.13107528431843865, 1.2129172433282163, -0.12440727123902086, 1.2772366855665198],
    [-60.0, 0.07778782447711559, 1.4503455958642244, -0.1871968328829833, 0.6017623499162852],
    [-35.5, -0.09502346205242712, 1.254722663598746, -0.21069954822332032, -0.567653363210586],
    [-20.25, -0.25609535403377043, -0.3260833705967098, 0.07175910722225484, -1.1515649541649173],
    [-12.6, -0.21808009991802632, -0.7327754709173696, 0.20520168053060348, -0.7700983636887083],
    [-9.5, 0.3191032477191282, -0.10809531881187123, 0.0377854324894665, 0.9847140700021197],
    [-9.25, 0.2052398087603554, -0.7550497682678933, 0.250031393210197, 0.6310848829135725],
    [-9.0, -0.022133721547341403, -0.9756639809263316, 0.3249473234552449, -0.05740051384366925],
    [-8.75, -0.2382300384596355, -0.6738561861206686, 0.22545479688945758, -0.6984248404822483],
    [-7.3, 0.3357703705151473, -0.18009580448329324, 0.07087411376989632, 0.9099842704363247],
    [-5.5, 0.017781541276574976, 0.8641972177713984, -0.367813453915712, 0.025111583073630928],
    [-3.2, -0.41744342056415135, 0.06503114699526315, -0.05390575563053929, -0.7541245533108414],
    [-1.0, 0.5355608832923521, -0.01016056711664521, 0.1039973894969446, 0.5923756264227924],
    [-0.5, 0.4757280916105396, -0.20408167033954738, 0.38035265975105387, 0.5059337136238472],
    [0.0, 0.3550280538878172, -0.2588194037928068, 0.6149266274460007, 0.4482883573538264],
    [0.5, 0.23169360648083348, -0.2249105326646839, 0.8542770431031554, 0.5445725641405923],
    [1.0, 0.13529241631288141, -0.1591474412967932, 1.2074235949528713, 0.9324359333927756],
    [2.7, 0.011198535451065882, -0.019325560692377636, 8.734387649988914, 13.351116152330931],
    [5.5, 3.368531190859981e-05, -8.046339130556515e-05, 2016.5800386595313, 4632.553733139042],
    [7.25, 3.8115630183373774e-07, -1.0390462946280257e-06, 155141.4326275031, 412195.08824343816],
    [8.75, 5.2401142318917526e-09, -1.5646762027577948e-08, 10270159.474439297, 30078570.414115336],
    [9.0, 2.47116843087249e-09, -7.480641389658946e-09, 21472868.891435347, 63807489.78090821],
    [9.25, 1.1535041557283402e-09, -3.538763310465635e-09, 45374957.29019727, 136747363.5252721],
    [9.5, 5.330263704617492e-10, -1.6566394593740667e-09, 96892265.58045109, 296034763.86800504],
    [12.0, 1.3931846888753607e-13, -4.854736554985309e-13, 329807225829.07416, 1135507502443.3708],
    [20.5, 1.7721363543149422e-28, -8.04515679375549e-28, 1.9835992986288336e+26, 8.956771981049161e+26],
    [35.0, 1.2981999731218427e-61, -7.689499683629199e-61, 2.0722688390069166e+59, 1.2244860857772324e+60],
    [60.0, 2.7831487094969354e-136, -2.1569758112094737e-135, 7.382584191543099e+133, 5.715444898335451e+134],
    [95.0, 7.366231046275381e-270, -7.181651085960337e-269, 2.2167313918368023e+267, 2.1600187546326252e+268],
];

// Negative zeros a_n of Ai, n = 1..=20.
pub const AIRY_ZEROS: [f64; 20] = [
    -2.338107410459767,
    -4.08794944413097,
    -5.520559828095551,
    -6.786708090071759,
    -7.944133587120853,
    -9.02265085334098,
    -10.040174341558085,
    -11.008524303733262,
    -11.936015563236262,
    -12.828776752865757,
    -13.691489035210719,
    -14.527829951775335,
    -15.340755135977997,
    -16.132685156945772,
    -16.90563399742994,
    -17.66130010569706,
    -18.401132599207116,
    -19.126380474246954,
    -19.8381298917215,
    -20.537332907677566,
];

// Sparse deep zeros for the root-finder range test.
pub const AIRY_ZEROS_SPARSE: [(usize, f64); 3] = [
    (50, -38.02100867725525),
    (100, -60.4555572741167),
    (200, -96.04733760308126),
];

// Ai'(a_n) at the zeros above, n = 1..=20.
pub const AIP_AT_ZEROS: [f64; 20] = [
    0.7012108227206914,
    -0.803111369654864,
    0.8652040258941519,
    -0.9108507370496018,
    0.9473357094415678,
    -0.9779228085694986,
    1.004370122660312,
    -1.0277386888207862,
    1.0487206485881895,
    -1.0677938591574279,
    1.0853028313507,
    -1.1015045702774968,
    1.116596177932656,
    -1.130732310493188,
    1.1440366732735527,
    -1.1566098491165655,
    1.168534784487525,
    -1.1798807298701455,
    1.1907061311587765,
    -1.2010607915198233,
];
