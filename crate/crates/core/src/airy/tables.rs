// Generated by tools/gen_airy_tables.py; do not edit by hand.

// Ai, Ai', Bi, Bi' at integer abscissas; Taylor expansions
// about the nearest node cover |x| <= 9.5.

pub(crate) struct TaylorNode {
    pub x: f64,
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
}

pub(crate) const TAYLOR_NODES: [TaylorNode; 19] = [
    TaylorNode { x: -9.0, ai: -0.022133721547341403, aip: -0.9756639809263316, bi: 0.3249473234552449, bip: -0.05740051384366925 },
    TaylorNode { x: -8.0, ai: -0.0527050503563862, aip: 0.9355609381983065, bi: -0.33125158075113786, bip: -0.1594504978129814 },
    TaylorNode { x: -7.0, ai: 0.18428083525050565, aip: -0.7710081684101265, bi: 0.293762071854414, bip: 0.4982445900581135 },
    TaylorNode { x: -6.0, ai: -0.3291451736298231, aip: 0.3459354872813429, bi: -0.14669837667055705, bip: -0.812898785105067 },
    TaylorNode { x: -5.0, ai: 0.35076100902411433, aip: 0.32719281855444315, bi: -0.13836913490160058, bip: 0.7784117730018992 },
    TaylorNode { x: -4.0, ai: -0.07026553294928951, aip: -0.7906285753685813, bi: 0.3922347057069993, bip: -0.1166705674383409 },
    TaylorNode { x: -3.0, ai: -0.37881429367765806, aip: 0.3145837692165988, bi: -0.19828962637492653, bip: -0.6756112226852585 },
    TaylorNode { x: -2.0, ai: 0.22740742820168558, aip: 0.618259020741691, bi: -0.4123025879563985, bip: 0.2787951669211695 },
    TaylorNode { x: -1.0, ai: 0.5355608832923521, aip: -0.01016056711664521, bi: 0.1039973894969446, bip: 0.5923756264227924 },
    TaylorNode { x: 0.0, ai: 0.3550280538878172, aip: -0.2588194037928068, bi: 0.6149266274460007, bip: 0.4482883573538264 },
    TaylorNode { x: 1.0, ai: 0.13529241631288141, aip: -0.1591474412967932, bi: 1.2074235949528713, bip: 0.9324359333927756 },
    TaylorNode { x: 2.0, ai: 0.03492413042327438, aip: -0.05309038443365363, bi: 3.2980949999782148, bip: 4.10068204993289 },
    TaylorNode { x: 3.0, ai: 0.006591139357460719, aip: -0.011912976705951319, bi: 14.037328963730232, bip: 22.92221496638217 },
    TaylorNode { x: 4.0, ai: 0.0009515638512048018, aip: -0.001958640950204179, bi: 83.84707140846814, bip: 161.9266835046134 },
    TaylorNode { x: 5.0, ai: 0.00010834442813607442, aip: -0.0002474138908684625, bi: 657.7920441711711, bip: 1435.8190802179824 },
    TaylorNode { x: 6.0, ai: 9.947694360252889e-06, aip: -2.4765200397034955e-05, bi: 6536.446104809864, bip: 15725.602621930477 },
    TaylorNode { x: 7.0, ai: 7.492128863997167e-07, aip: -2.008150894738792e-06, bi: 80327.79070943025, bip: 209552.6708739713 },
    TaylorNode { x: 8.0, ai: 4.6922076160992316e-08, aip: -1.3414392979067865e-07, bi: 1199586.00412446, bip: 3354342.3127445388 },
    TaylorNode { x: 9.0, ai: 2.47116843087249e-09, aip: -7.480641389658946e-09, bi: 21472868.891435347, bip: 63807489.78090821 },
];
