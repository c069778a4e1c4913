//! Published values used by the acceptance run.

/// `W_2^(-j)` in (OUT, IN) with `s1 = z + z1`, `s2 = z z1`.
pub const W2: [&str; 10] = [
    "-4/kappa*s2/(z-z1)^2",
    "-4*(kappa-1)/(kappa^2)*s1*s2/(z-z1)^3",
    "-4*(kappa-1)^2/(kappa^3)*s2*(s1^2+2*s2)/(z-z1)^4",
    "-4*(kappa-1)/(kappa^4)*s1*s2/(z-z1)^5*((kappa-1)^2*s1^2+2*(4*kappa^2-7*kappa+4)*s2)",
    "-4*(kappa-1)^2/(kappa^5)*s2/(z-z1)^6*((kappa-1)^2*s1^4+2*(11*kappa^2-16*kappa+11)*s2*s1^2+4*(4*kappa^2-5*kappa+4)*s2^2)",
    "-4*(kappa-1)/(kappa^6)*s1*s2/(z-z1)^7*((kappa-1)^4*s1^4+2*(26*kappa^4-81*kappa^3+111*kappa^2-81*kappa+26)*s2*s1^2+4*(34*kappa^4-95*kappa^3+126*kappa^2-95*kappa+34)*s2^2)",
    "-4*(kappa-1)^2/(kappa^7)*s2/(z-z1)^8*((kappa-1)^4*s1^6+6*(19*kappa^4-52*kappa^3+69*kappa^2-52*kappa+19)*s2*s1^4+72*(10*kappa^4-23*kappa^3+30*kappa^2-23*kappa+10)*s2^2*s1^2+4*(68*kappa^4-140*kappa^3+183*kappa^2-140*kappa+68)*s2^3)",
    "-4*(kappa-1)/(kappa^8)*s1*s2/(z-z1)^9*((kappa-1)^6*s1^6+2*(120*kappa^6-519*kappa^5+1044*kappa^4-1289*kappa^3+1044*kappa^2-519*kappa+120)*s2*s1^4+8*(384*kappa^6-1449*kappa^5+2688*kappa^4-3233*kappa^3+2688*kappa^2-1449*kappa+384)*s2^2*s1^2+8*(496*kappa^6-1722*kappa^5+3051*kappa^4-3616*kappa^3+3051*kappa^2-1722*kappa+496)*s2^3)",
    "-4*(kappa-1)^2/(kappa^9)*s2/(z-z1)^10*((kappa-1)^6*s1^8+2*(247*kappa^6-960*kappa^5+1815*kappa^4-2192*kappa^3+1815*kappa^2-960*kappa+247)*s2*s1^6+12*(968*kappa^6-3117*kappa^5+5390*kappa^4-6311*kappa^3+5390*kappa^2-3117*kappa+968)*s2^2*s1^4+8*(4288*kappa^6-12264*kappa^5+20319*kappa^4-23309*kappa^3+20319*kappa^2-12264*kappa+4288)*s2^3*s1^2+8*(992*kappa^6-2604*kappa^5+4212*kappa^4-4753*kappa^3+4212*kappa^2-2604*kappa+992)*s2^4)",
    "-4*(kappa-1)/(kappa^10)*s1*s2/(z-z1)^11*((kappa-1)^8*s1^8+2*(502*kappa^8-2725*kappa^7+7009*kappa^6-11461*kappa^5+13351*kappa^4-11461*kappa^3+7009*kappa^2-2725*kappa+502)*s2*s1^6+12*(3398*kappa^8-15783*kappa^7+36212*kappa^6-55308*kappa^5+63002*kappa^4-55308*kappa^3+36212*kappa^2-15783*kappa+3398)*s2^2*s1^4+16*(14384*kappa^8-60814*kappa^7+130739*kappa^6-192346*kappa^5+216458*kappa^4-192346*kappa^3+130739*kappa^2-60814*kappa+14384)*s2^3*s1^2+16*(11056*kappa^8-43750*kappa^7+90025*kappa^6-129211*kappa^5+144256*kappa^4-129211*kappa^3+90025*kappa^2-43750*kappa+11056)*s2^4)",
];

/// Order-`j` coefficient of `m_k + N` in `1/N`.
pub const MOMENTS: [&str; 10] = [
    "k/kappa",
    "(kappa-1)/kappa^2*k^2",
    "(kappa-1)^2/kappa^3*k^3",
    "(kappa-1)/(6*kappa^4)*k^2*(-kappa+(6*kappa^2-11*kappa+6)*k^2)",
    "(kappa-1)^2/(2*kappa^5)*k^3*(-kappa+(2*kappa^2-3*kappa+2)*k^2)",
    "(kappa-1)/(30*kappa^6)*k^2*(kappa^3+kappa^2+kappa+(-30*kappa^3+55*kappa^2-30*kappa)*k^2+(30*kappa^4-91*kappa^3+124*kappa^2-91*kappa+30)*k^4)",
    "(kappa-1)^2/(60*kappa^7)*k^3*(8*kappa^3+15*kappa^2+8*kappa+(-100*kappa^3+150*kappa^2-100*kappa)*k^2+(60*kappa^4-148*kappa^3+195*kappa^2-148*kappa+60)*k^4)",
    "(kappa-1)/(840*kappa^8)*k^2*(-20*kappa*(kappa^4+kappa^3+kappa^2+kappa+1)+7*kappa*(42*kappa^4+31*kappa^3-116*kappa^2+31*kappa+42)*k^2-70*kappa*(30*kappa^4-91*kappa^3+124*kappa^2-91*kappa+30)*k^4+(840*kappa^6-3214*kappa^5+6033*kappa^4-7288*kappa^3+6033*kappa^2-3214*kappa+840)*k^6)",
    "(kappa-1)^2/(5040*kappa^9)*k^3*(-600*kappa^5-1112*kappa^4-1180*kappa^3-1112*kappa^2-600*kappa+(3780*kappa^5+6048*kappa^4-10605*kappa^3+6048*kappa^2+3780*kappa)*k^2+(-17640*kappa^5+43512*kappa^4-57330*kappa^3+43512*kappa^2-17640*kappa)*k^4+(5040*kappa^6-15780*kappa^5+27152*kappa^4-31685*kappa^3+27152*kappa^2-15780*kappa+5040)*k^6)",
    "(kappa-1)/(7560*kappa^10)*k^2*(252*kappa*(kappa^6+kappa^5+kappa^4+kappa^3+kappa^2+kappa+1)-2*kappa*(1470*kappa^6+1049*kappa^5-888*kappa^4-1162*kappa^3-888*kappa^2+1049*kappa+1470)*k^2+21*kappa*(510*kappa^6+235*kappa^5-2937*kappa^4+4552*kappa^3-2937*kappa^2+235*kappa+510)*k^4-42*kappa*(840*kappa^6-3214*kappa^5+6033*kappa^4-7288*kappa^3+6033*kappa^2-3214*kappa+840)*k^6+(7560*kappa^8-33222*kappa^7+73603*kappa^6-110325*kappa^5+124936*kappa^4-110325*kappa^3+73603*kappa^2-33222*kappa+7560)*k^8)",
];

/// Reduced structure polynomials `r_j`, with `p_j = (kappa-1)^{1 or 2} r_j`
/// for odd or even `j`.
pub const REDUCED: [&str; 9] = [
    "1",
    "1",
    "1-11*kappa/6+kappa^2",
    "1-3*kappa/2+kappa^2",
    "1-91*kappa/30+62*kappa^2/15-91*kappa^3/30+kappa^4",
    "1-37*kappa/15+13*kappa^2/4-37*kappa^3/15+kappa^4",
    "1-1607*kappa/420+2011*kappa^2/280-911*kappa^3/105+2011*kappa^4/280-1607*kappa^5/420+kappa^6",
    "1-263*kappa/84+1697*kappa^2/315-6337*kappa^3/1008+1697*kappa^4/315-263*kappa^5/84+kappa^6",
    "1-791*kappa/180+73603*kappa^2/7560-7355*kappa^3/504+2231*kappa^4/135-7355*kappa^5/504+73603*kappa^6/7560-791*kappa^7/180+kappa^8",
];

/// `m_1` and `m_2`.
pub const M1: &str = "-N+1/kappa+(kappa-1)/(kappa*(kappa*N+1-kappa))";
pub const M2: &str = "-N+2/kappa+(kappa-1)/kappa*(2/(kappa*N+1-kappa)-2*(kappa-2)/((kappa+1)*(kappa*N+2-kappa))+2*(2*kappa-1)/((kappa+1)*(kappa*N+1-2*kappa)))";

/// `m_k + N` for `N = 2`, `k = 1..4`.
pub const N2: [&str; 4] = [
    "2/(1+kappa)",
    "4+4/(1+kappa)-12/(2+kappa)",
    "6/(1+kappa)-48/(2+kappa)+60/(3+kappa)",
    "4+8/(1+kappa)-120/(2+kappa)+360/(3+kappa)-280/(4+kappa)",
];

/// `m_k + N` for `N = 3`, `k = 1..6`.
pub const N3: [&str; 6] = [
    "3/(1+2*kappa)",
    "6/(1+2*kappa)-6/(1+kappa)^2+3/(1+kappa)",
    "9+9/(1+2*kappa)-36/(1+kappa)^2+126/(1+kappa)-315/(3+2*kappa)",
    "12/(1+2*kappa)-120/(1+kappa)^2+654/(1+kappa)-3780/(3+2*kappa)+360/(2+kappa)^2+1254/(2+kappa)",
    "15/(1+2*kappa)-300/(1+kappa)^2+2070/(1+kappa)-21735/(3+2*kappa)+7200/(2+kappa)^2+1320/(2+kappa)+15015/(5+2*kappa)",
    "9+18/(1+2*kappa)-630/(1+kappa)^2+5076/(1+kappa)-85680/(3+2*kappa)+62640/(2+kappa)^2-104724/(2+kappa)+450450/(5+2*kappa)-15120/(3+kappa)^2-82854/(3+kappa)",
];

/// Numerator polynomials `P_j(zeta)` of the CSE and COE two-point series,
/// `W_2^(-j) = c_j zeta P_j / (zeta - 1)^{j+2}`.
pub const P: [&str; 10] = [
    "1",
    "1+zeta",
    "1+4*zeta+zeta^2",
    "1+15*zeta+15*zeta^2+zeta^3",
    "1+50*zeta+138*zeta^2+50*zeta^3+zeta^4",
    "1+157*zeta+994*zeta^2+994*zeta^3+157*zeta^4+zeta^5",
    "1+480*zeta+6231*zeta^2+13456*zeta^3+6231*zeta^4+480*zeta^5+zeta^6",
    "1+1451*zeta+35961*zeta^2+146907*zeta^3+146907*zeta^4+35961*zeta^5+1451*zeta^6+zeta^7",
    "1+4366*zeta+197224*zeta^2+1402834*zeta^3+2597230*zeta^4+1402834*zeta^5+197224*zeta^6+4366*zeta^7+zeta^8",
    "1+13113*zeta+1047252*zeta^2+12262436*zeta^3+38286798*zeta^4+38286798*zeta^5+12262436*zeta^6+1047252*zeta^7+13113*zeta^8+zeta^9",
];
