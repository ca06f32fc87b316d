// Frozen reference values for the test suite.
// Generated by tests/oracles/gen_goldens.py (mpmath tanh-sinh
// quadrature, 30 significant digits; scipy for critical values).
// Do not edit by hand; rerun the generator instead.
// Last generated: 2026-08-24
#pragma once

namespace golden {

struct MultiplierRef {
  double beta;
  int k;
  double value;
};

// m_k = 2 * int_0^{1/2} sin(2 pi k t) t^(-1-beta) dt
inline constexpr MultiplierRef kMultiplier[] = {
    {0.25, 1, 6.579778897271741112445},
    {0.25, 2, 6.706082320485289307152},
    {0.25, 3, 8.06229015649313567082},
    {0.25, 4, 8.213740209017513159646},
    {0.25, 5, 9.031573116569592712241},
    {0.25, 6, 9.170786580051523090472},
    {0.25, 7, 9.76878224375882509413},
    {0.25, 8, 9.894983059800450062471},
    {0.25, 16, 11.8319684788740145597},
    {0.25, 32, 14.10321662188179603336},
    {0.25, 64, 16.78794417792318891214},
    {0.25, 128, 19.97249459863668363521},
    {0.25, 256, 23.755508977324473955},
    {0.5, 1, 13.29249559797503747075},
    {0.5, 2, 17.35402181879871854434},
    {0.5, 3, 22.05470752299368426402},
    {0.5, 4, 24.91256324018820240162},
    {0.5, 5, 28.27673972881684390774},
    {0.5, 6, 30.63266275823518432821},
    {0.5, 7, 33.37514117387171319643},
    {0.5, 8, 35.43117628990843949995},
    {0.5, 16, 50.2092956896850503225},
    {0.5, 32, 71.05800254887037859873},
    {0.5, 64, 100.5168987768539889023},
    {0.5, 128, 142.1652204629479213504},
    {0.5, 256, 201.0584129895257881397},
    {0.75, 1, 36.26967941346550915987},
    {0.75, 2, 59.13038812314170883597},
    {0.75, 3, 81.14590417524150707239},
    {0.75, 4, 100.0037405668251101798},
    {0.75, 5, 118.7400208293764520378},
    {0.75, 6, 135.7219964613048455831},
    {0.75, 7, 152.705476108558708518},
    {0.75, 8, 168.4904437926449657602},
    {0.75, 16, 283.5226404324244871918},
    {0.75, 32, 476.90522833650405338},
    {0.75, 64, 802.0953097581127294692},
    {0.75, 128, 1348.977908569459547899},
    {0.75, 256, 2268.711259924301450347},
};

// Direct quadrature of the fractional drift of sin(2 pi theta) at
// theta = i/8, i = 0..7, for beta = 0.5 (no Fourier route involved).
inline constexpr double kFracDriftSineBetaHalf[8] = {
    13.29249559797503750749,
    9.399213776220481037175,
    -5.715379401123817575828e-37,
    -9.399213776220481037128,
    -13.29249559797503750749,
    -9.3992137762204810372,
    4.466292745551177095067e-36,
    9.399213776220481037221,
};

// c_k = int_0^{1/2} u^(-beta) cos(2 pi k u) du
inline constexpr MultiplierRef kCosMoment[] = {
    {0.25, 1, 0.130900541994067225414},
    {0.25, 2, 0.06670663438040010240956},
    {0.25, 3, 0.0534647221269588728574},
    {0.5, 1, 0.5288915951112465854983},
    {0.5, 2, 0.3452472943733025035853},
    {0.5, 3, 0.2925096433942046455988},
    {0.75, 1, 2.164687035316183418154},
    {0.75, 2, 1.764542541205083792495},
    {0.75, 3, 1.614346469526035664608},
};

// Upper 1% critical value of the chi-square law with 63 dof.
inline constexpr double kChi2Crit63Dof1Pct = 92.010023614132137;

// Asymptotic Kolmogorov-Smirnov critical constant at the 1% level;
// D_crit = c / (sqrt(N) + 0.12 + 0.11/sqrt(N))  (Stephens 1970).
inline constexpr double kKsCrit1Pct = 1.62762;

}  // namespace golden
