// Generated by tests/oracle/generate_values.py. Do not edit.
#pragma once

namespace oracle {

inline constexpr double anchor_x = 2.0287578381104342236;
inline constexpr double anchor_z = 65.853733851112365397;
inline constexpr double hom_tau_0[] = {
    0.0,
    65.853733851112365397,
    157.91367041742973790,
    386.22947248712890860,
};
inline constexpr double hom_tau_half_pi[] = {
    4.6386303295802987740,
    53.103201273881612132,
    173.09789879629047205,
};
inline constexpr double eps_0p1_tau_0[] = {
    0.0,
    65.558022104754154576,
    154.70051552658828931,
};
inline constexpr double eps_0p05_tau_half_pi[] = {
    4.6296594322844668322,
    52.953728046756779963,
};
inline constexpr double kronig_penney_tau_1[] = {
    1.9557516196238077334,
    59.887867906431294699,
    165.05588839060440035,
};
inline constexpr double weyl_four_vertex[][2] = {
    {-0.23383606881776209865, 0.22767627225268670772},
    {1.4219668646580640709, 0.13837247577542092213},
    {0.0, 0.0},
    {0.0, 0.0},
    {1.4219668646580640709, 0.13837247577542092213},
    {0.34474429760948354379, 0.72471901991423907222},
    {1.4892943176932079519, 0.36096234886915504737},
    {0.0, 0.0},
    {0.0, 0.0},
    {1.4892943176932079519, 0.36096234886915504737},
    {1.8966786656286910019, 1.6243216297802352565},
    {1.8337663107868302505, 0.94661155406520688528},
    {0.0, 0.0},
    {0.0, 0.0},
    {1.8337663107868302505, 0.94661155406520688528},
    {1.3180982992014453595, 1.1272788821186828920},
};
inline constexpr double weyl_loop_graph[][2] = {
    {5.2047301956420539066, 4.5179659551404599873},
    {1.8385830797691482567, 0.16762070896812697451},
    {1.8385830797691482567, 0.16762070896812697451},
    {-0.66073368723872061454, 0.29030667631600692109},
};
inline constexpr double four_vertex_spectrum[] = {
    0.31052258238876279957,
    1.0724082307096150596,
    3.1026750758544345525,
    5.9703627700567331048,
    9.7366186468061476750,
    15.322801472882766441,
};
inline constexpr double triangle_sigma_s2[][2] = {
    {0.68830353470089502622, 0.17988268381910172639},
    {-0.17689455565973202430, 0.68013879492221059693},
    {-0.22907680288852862514, 0.66438263264376581518},
    {0.67283672196911715835, 0.23110664505712954826},
};
inline constexpr double triangle_rtd[][2] = {
    {-0.41351070086004226848, -0.10700652621396587511},
    {0.080662637269449968192, -0.036360104383378250926},
    {0.080662637269449968192, -0.036360104383378250926},
    {-0.45446467957427893963, -0.10525416253226006539},
};
inline constexpr double two_vertex_f1_tau3[2] = {-0.30523449588374304853, 0.0};

}  // namespace oracle
