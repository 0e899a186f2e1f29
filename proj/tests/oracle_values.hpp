#pragma once

// Generated by tests/oracle/derive.py; do not edit by hand.

#include <array>
#include <string_view>

namespace oracle {

struct ClosedFormValue {
  std::string_view protocol, recon;
  double T, W, rate;
};

inline constexpr std::array<ClosedFormValue, 74> kClosedForms = {{
    {"coll_het", "dr", 0.5, 1, 0.0},
    {"coll_het", "dr", 0.75, 1, 1.5849625007211562},
    {"coll_het", "dr", 0.5, 3, -2.0},
    {"coll_het", "dr", 0.3, 1.2, -1.7058391069501126},
    {"coll_het", "dr", 0.7, 1.5, 0.31998230272724499},
    {"coll_het", "dr", 0.9, 1.05, 3.0003622915961389},
    {"coll_het", "dr", 0.62, 2.4, -0.95534149285460206},
    {"hom", "dr", 0.5, 1, 0.0},
    {"hom", "dr", 0.75, 1, 0.79248125036057809},
    {"hom", "dr", 0.5, 3, -0.85457890266526988},
    {"hom", "dr", 0.3, 1.2, -0.78197494172592533},
    {"hom", "dr", 0.7, 1.5, 0.17831276183142699},
    {"hom", "dr", 0.9, 1.05, 1.46830805580655},
    {"hom", "dr", 0.62, 2.4, -0.38158540642650148},
    {"het", "dr", 0.5, 1, -1.4426950408889634},
    {"het", "dr", 0.75, 1, 0.14226745983219277},
    {"het", "dr", 0.5, 3, -2.6502137905283853},
    {"het", "dr", 0.3, 1.2, -2.873146303335028},
    {"het", "dr", 0.7, 1.5, -0.83461506911314778},
    {"het", "dr", 0.9, 1.05, 1.5792858967733128},
    {"het", "dr", 0.62, 2.4, -1.7993292521989431},
    {"coll_het", "rr", 0.5, 1, 1.0},
    {"coll_het", "rr", 0.75, 1, 2.0},
    {"coll_het", "rr", 0.5, 3, -2.3774437510817343},
    {"coll_het", "rr", 0.3, 1.2, -0.34187215391437664},
    {"coll_het", "rr", 0.7, 1.5, 0.44212114669369701},
    {"coll_het", "rr", 0.9, 1.05, 3.127144502294856},
    {"coll_het", "rr", 0.62, 2.4, -1.2046662997776292},
    {"hom", "rr", 0.5, 1, 0.5},
    {"hom", "rr", 0.75, 1, 1.0},
    {"hom", "rr", 0.5, 3, -1.2075187496394219},
    {"hom", "rr", 0.3, 1.2, -0.18915980847689709},
    {"hom", "rr", 0.7, 1.5, 0.15773699824965298},
    {"hom", "rr", 0.9, 1.05, 1.5229982508411047},
    {"hom", "rr", 0.62, 2.4, -0.63983689734686027},
    {"het", "rr", 0.5, 1, 0.55730495911103659},
    {"het", "rr", 0.75, 1, 1.2239716257777033},
    {"het", "rr", 0.5, 3, -1.272770039446651},
    {"het", "rr", 0.3, 1.2, -0.1932220763601728},
    {"het", "rr", 0.7, 1.5, 0.20581087703960022},
    {"het", "rr", 0.9, 1.05, 2.084354131083643},
    {"het", "rr", 0.62, 2.4, -0.69699974751953371},
    {"hom2", "dr", 0.5, 1, 0.5},
    {"hom2", "dr", 0.75, 1, 1.7924812503605781},
    {"hom2", "dr", 0.5, 3, -1.5},
    {"hom2", "dr", 0.3, 1.2, -0.83735630986700948},
    {"hom2", "dr", 0.7, 1.5, 0.57726888914212411},
    {"hom2", "dr", 0.9, 1.05, 3.0763638383186639},
    {"hom2", "dr", 0.62, 2.4, -0.61051155316067731},
    {"coll_het2", "dr", 0.5, 1, 1.0},
    {"coll_het2", "dr", 0.75, 1, 3.5849625007211562},
    {"coll_het2", "dr", 0.5, 3, -3.0},
    {"coll_het2", "dr", 0.3, 1.2, -1.674712619734019},
    {"coll_het2", "dr", 0.7, 1.5, 1.1545377782842482},
    {"coll_het2", "dr", 0.9, 1.05, 6.1527276766373278},
    {"coll_het2", "dr", 0.62, 2.4, -1.2210231063213546},
    {"het2", "dr", 0.5, 1, -0.85773254016780723},
    {"het2", "dr", 0.75, 1, 0.94962238188979688},
    {"het2", "dr", 0.5, 3, -3.6650874622254113},
    {"het2", "dr", 0.3, 1.2, -2.8956736262468663},
    {"het2", "dr", 0.7, 1.5, -0.53030542527939761},
    {"het2", "dr", 0.9, 1.05, 2.4768300918667405},
    {"het2", "dr", 0.62, 2.4, -2.2189857366328766},
    {"hom2", "rr", 0.5, 1, 0.79248125036057809},
    {"hom2", "rr", 0.75, 1, 1.8502198590705461},
    {"hom2", "rr", 0.5, 3, -1.2075187496394219},
    {"hom2", "rr", 0.3, 1.2, -0.13891123358271728},
    {"hom2", "rr", 0.7, 1.5, 0.66451775475819235},
    {"hom2", "rr", 0.9, 1.05, 3.0843346102531747},
    {"hom2", "rr", 0.62, 2.4, -0.45948177175274899},
    {"het2", "rr", 0.5, 1, 0.76051845058997384},
    {"het2", "rr", 0.7, 1.5, 0.66143326116349073},
    {"het2", "rr", 0.5, 1.2, 0.32800356262304482},
    {"het2", "rr", 0.3, 1.2, -0.11333617373381753}
}};

struct ExactValue {
  std::string_view protocol, recon;
  double V, rate;
};

// Exact finite-V rates at T = 0.7, W = 1.5.
inline constexpr std::array<ExactValue, 26> kExactRates = {{
    {"coll_het", "dr", 1e3, 0.31924733321233898},
    {"coll_het", "rr", 1e3, 0.4404592779803405},
    {"coll_het2", "dr", 1e3, 1.1504206010321574},
    {"coll_hom", "dr", 1e3, 0.17793081140568583},
    {"coll_hom2", "dr", 1e3, 0.57511019820506364},
    {"het", "dr", 1e3, -0.83329134855176822},
    {"het", "rr", 1e3, 0.20463740752220998},
    {"het2", "dr", 1e3, -0.53098368373110297},
    {"het2", "rr", 1e3, 0.65862192624045933},
    {"hom", "dr", 1e3, 0.17763268751989173},
    {"hom", "rr", 1e3, 0.15682272873226404},
    {"hom2", "dr", 1e3, 0.57483978396911489},
    {"hom2", "rr", 1e3, 0.66187647506846902},
    {"coll_het", "dr", 1e4, 0.31990872738149304},
    {"coll_het", "rr", 1e4, 0.44195483214969976},
    {"coll_het2", "dr", 1e4, 1.1541252630838159},
    {"coll_hom", "dr", 1e4, 0.17827451739993183},
    {"coll_hom2", "dr", 1e4, 0.57705254605265151},
    {"het", "dr", 1e4, -0.83448256822732128},
    {"het", "rr", 1e4, 0.20569340690411247},
    {"het2", "dr", 1e4, -0.53037374681820127},
    {"het2", "rr", 1e4, 0.66115153913790229},
    {"hom", "dr", 1e4, 0.1782446536508686},
    {"hom", "rr", 1e4, 0.15764548546112556},
    {"hom2", "dr", 1e4, 0.5770254696605187},
    {"hom2", "rr", 1e4, 0.66425317993509699}
}};

struct Het2Eigenvalues {
  double T, W;
  std::array<double, 3> n;
};

inline constexpr std::array<Het2Eigenvalues, 6> kHet2Eigenvalues = {{
    {0.7, 1.5, {1.6157132939321804, 1.5, 1.0472258989741973}},
    {0.5, 1, {2.3333333333333333, 1.0, 1.0}},
    {0.3, 2.5, {7.0995757831313806, 2.5, 1.0598321933877909}},
    {0.9, 1.2, {1.2, 1.1280847704167259, 1.0089034838670183}},
    {0.02, 4, {241.13890752121438, 4.0, 1.0004761486653563}},
    {0.98, 1.01, {1.020716363016826, 1.01, 1.0000979750555809}}
}};

inline constexpr double kHomRrThresholdAtHalf = 0.25745023292629867;
inline constexpr double kHetDrPureLossRoot = 0.73105857863000488;
inline constexpr double kHet2DrPureLossRoot = 0.62575078711708344;
inline constexpr double kCollHom2DrPureLossRoot = 0.38196601125010515;
inline constexpr double kHomDrCrossover = 0.85994353351033128;
inline constexpr double kG2 = 1.3774437510817343;

}  // namespace oracle
