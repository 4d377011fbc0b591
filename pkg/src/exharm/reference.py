"""Published benchmark values for the exotic Harmonium parameter grid.

All entries are keyed by ``(m_pcp, omega)`` and quoted to the four decimals
given in the source tables. Basis exponents are the optimized [7s:7s] sets,
electron first and PCP second.
"""

MASSES = (1, 10, 207, 1836)
OMEGAS = (0.0001, 0.01, 0.1, 1.0, 10.0, 100.0)
GRID = tuple((m, w) for m in MASSES for w in OMEGAS)


# exact <r>, MC-HF <r>, exact var(r), MC-HF var(r)
MOMENTS = {
    (1, 0.0001): (3.0, 5.9816, 3.0, 7.19),
    (1, 0.01): (2.9947, 5.8676, 2.9811, 6.8849),
    (1, 0.1): (2.6884, 3.8717, 2.1219, 2.8296),
    (1, 1.0): (1.3501, 1.4841, 0.3927, 0.3995),
    (1, 10.0): (0.4807, 0.4937, 0.0437, 0.0437),
    (1, 100.0): (0.1572, 0.1585, 0.0045, 0.0045),
    (10, 0.0001): (1.65, 2.5908, 0.9075, 1.5619),
    (10, 0.01): (1.6491, 2.5791, 0.9058, 1.5472),
    (10, 0.1): (1.5788, 2.1296, 0.783, 1.0317),
    (10, 1.0): (0.936, 0.9972, 0.2011, 0.202),
    (10, 10.0): (0.3502, 0.3552, 0.0237, 0.0236),
    (10, 100.0): (0.116, 0.1164, 0.0025, 0.0025),
    (207, 0.0001): (1.5072, 1.7137, 0.7573, 0.875),
    (207, 0.01): (1.5066, 1.7076, 0.756, 0.87),
    (207, 0.1): (1.4512, 1.5372, 0.6665, 0.7021),
    (207, 1.0): (0.8834, 0.8889, 0.1812, 0.1811),
    (207, 10.0): (0.3336, 0.334, 0.0216, 0.0216),
    (207, 100.0): (0.1107, 0.1108, 0.0022, 0.0022),
    (1836, 0.0001): (1.5008, 1.5704, 0.7508, 0.7898),
    (1836, 0.01): (1.5001, 1.5624, 0.7496, 0.7843),
    (1836, 0.1): (1.4454, 1.4594, 0.6614, 0.6673),
    (1836, 1.0): (0.881, 0.454, 0.1803, 0.2901),
    (1836, 10.0): (0.3329, 0.3329, 0.0215, 0.0215),
    (1836, 100.0): (0.1105, 0.1105, 0.0022, 0.0022),
}


# E_corr_ref_indep, E_corr_ref_dep, dT_e, dT_pcp, dV_ext_e, dV_ext_pcp, dV_ep
CORRELATION = {
    (1, 0.0001): (-0.4887, -0.1413, 0.0708, 0.0708, 0.0, 0.0, -0.283),
    (1, 0.01): (-0.3899, -0.1283, 0.0727, 0.0727, 0.0029, 0.0029, -0.2795),
    (1, 0.1): (-0.2288, -0.0861, 0.057, 0.057, 0.0046, 0.0046, -0.2095),
    (1, 1.0): (-0.1327, -0.0601, 0.0343, 0.0343, 0.0014, 0.0014, -0.1314),
    (1, 10.0): (-0.1084, -0.0528, 0.0276, 0.0276, 0.0004, 0.0004, -0.1087),
    (1, 100.0): (-0.1017, -0.0506, 0.0257, 0.0257, 0.0001, 0.0001, -0.1022),
    (10, 0.0001): (-0.8826, -0.1973, 0.223, -0.0254, 0.0, 0.0001, -0.395),
    (10, 0.01): (-0.6579, -0.1835, 0.2226, -0.0195, 0.0005, 0.006, -0.393),
    (10, 0.1): (-0.325, -0.1188, 0.1805, -0.0052, -0.0027, 0.0215, -0.313),
    (10, 1.0): (-0.1287, -0.0595, 0.0842, -0.005, -0.0144, 0.021, -0.1454),
    (10, 10.0): (-0.0867, -0.0432, 0.0534, -0.0051, -0.0168, 0.0184, -0.0932),
    (10, 100.0): (-0.0765, -0.0389, 0.0454, -0.005, -0.017, 0.0175, -0.0797),
    (207, 0.0001): (-0.8813, -0.0828, 0.1148, -0.0318, 0.0, 0.0001, -0.1658),
    (207, 0.01): (-0.2886, -0.0696, 0.1127, -0.0255, 0.0, 0.0059, -0.1626),
    (207, 0.1): (-0.0603, -0.0266, 0.062, -0.0093, -0.0009, 0.0096, -0.088),
    (207, 1.0): (-0.0237, -0.007, 0.0137, -0.0025, -0.0022, 0.0036, -0.0195),
    (207, 10.0): (-0.0076, -0.004, 0.0062, -0.0014, -0.002, 0.0023, -0.009),
    (207, 100.0): (-0.0064, -0.0033, 0.0047, -0.0012, -0.0019, 0.0019, -0.0069),
    (1836, 0.0001): (-0.6838, -0.0332, 0.0481, -0.0147, 0.0, 0.0001, -0.0666),
    (1836, 0.01): (-0.0683, -0.0218, 0.0437, -0.0093, 0.0, 0.0042, -0.0604),
    (1836, 0.1): (-0.0092, -0.0045, 0.0122, -0.0019, -0.0002, 0.0021, -0.0167),
    (1836, 1.0): (-0.0018, -0.0009, 0.0019, -0.0004, -0.0003, 0.0005, -0.0026),
    (1836, 10.0): (-0.0009, -0.0005, 0.0008, -0.0002, -0.0003, 0.0003, -0.0011),
    (1836, 100.0): (-0.0008, -0.0004, 0.0007, -0.0002, -0.0004, 0.0002, -0.0008),
}


# effective correlation radius: (electron, PCP)
RADII = {
    (1, 0.0001): (11.289, 11.289),
    (1, 0.01): (4.8022, 4.8022),
    (1, 0.1): (2.3349, 2.3349),
    (1, 1.0): (0.9109, 0.9109),
    (1, 10.0): (0.3096, 0.3096),
    (1, 100.0): (0.1001, 0.1001),
    (10, 0.0001): (5.7998, 5.7831),
    (10, 0.01): (2.4278, 2.1789),
    (10, 0.1): (1.3501, 0.9281),
    (10, 1.0): (0.6771, 0.329),
    (10, 10.0): (0.2623, 0.1078),
    (10, 100.0): (0.0883, 0.0345),
    (207, 0.0001): (3.3411, 3.23),
    (207, 0.01): (1.2299, 0.6853),
    (207, 0.1): (0.9419, 0.2367),
    (207, 1.0): (0.6096, 0.0771),
    (207, 10.0): (0.2513, 0.0246),
    (207, 100.0): (0.0858, 0.0078),
    (1836, 0.0001): (2.0703, 1.764),
    (1836, 0.01): (1.0181, 0.2513),
    (1836, 0.1): (0.9172, 0.082),
    (1836, 1.0): (0.6063, 0.0262),
    (1836, 10.0): (0.2508, 0.0083),
    (1836, 100.0): (0.0857, 0.0026),
}


# E_ad, E_non_ad, Delta_E
ADIABATIC = {
    (1, 0.0001): (-0.4999, 0.25, 0.1087),
    (1, 0.01): (-0.4849, 0.2501, 0.1219),
    (1, 0.1): (-0.3357, 0.2617, 0.1756),
    (1, 1.0): (1.6797, 0.4322, 0.3721),
    (1, 10.0): (26.2654, 1.1299, 1.0771),
    (1, 100.0): (288.5572, 3.3849, 3.3343),
    (10, 0.0001): (-0.4999, 0.0455, -0.1519),
    (10, 0.01): (-0.4849, 0.0455, -0.138),
    (10, 0.1): (-0.3357, 0.0468, -0.072),
    (10, 1.0): (1.6797, 0.0716, 0.0121),
    (10, 10.0): (26.2654, 0.1816, 0.1384),
    (10, 100.0): (288.5572, 0.5397, 0.5008),
    (207, 0.0001): (-0.4999, 0.0024, -0.0804),
    (207, 0.01): (-0.4849, 0.0024, -0.0672),
    (207, 0.1): (-0.3357, 0.0025, -0.0241),
    (207, 1.0): (1.6797, 0.0037, -0.0032),
    (207, 10.0): (26.2654, 0.0094, 0.0054),
    (207, 100.0): (288.5572, 0.0279, 0.0246),
    (1836, 0.0001): (-0.4999, 0.0003, -0.0329),
    (1836, 0.01): (-0.4849, 0.0003, -0.0216),
    (1836, 0.1): (-0.3357, 0.0003, -0.0042),
    (1836, 1.0): (1.6797, 0.0004, -0.0005),
    (1836, 10.0): (26.2654, 0.0011, 0.0006),
    (1836, 100.0): (288.5572, 0.0032, 0.0027),
}


# E, T_e, T_pcp, V_ext_e, V_ext_pcp, V_ep from the exact wavefunction
ENERGIES_EXACT = {
    (1, 0.0001): (-0.2499, 0.125, 0.125, 0.0, 0.0, -0.5),
    (1, 0.01): (-0.2347, 0.129, 0.129, 0.0039, 0.0039, -0.5006),
    (1, 0.1): (-0.0739, 0.1846, 0.1846, 0.0492, 0.0492, -0.5414),
    (1, 1.0): (2.1119, 0.8999, 0.8999, 0.6519, 0.6519, -0.9918),
    (1, 10.0): (27.3953, 7.8576, 7.8576, 7.1851, 7.1851, -2.69),
    (1, 100.0): (291.9421, 76.0373, 76.0373, 74.0028, 74.0028, -8.138),
    (10, 0.0001): (-0.4544, 0.4132, 0.0414, 0.0, 0.0001, -0.9091),
    (10, 0.01): (-0.4394, 0.4142, 0.0482, 0.0008, 0.0068, -0.9094),
    (10, 0.1): (-0.2889, 0.4465, 0.1121, 0.0204, 0.0695, -0.9374),
    (10, 1.0): (1.7513, 1.1751, 0.7925, 0.5133, 0.7263, -1.4559),
    (10, 10.0): (26.4471, 8.4167, 7.5917, 6.7289, 7.4229, -3.7131),
    (10, 100.0): (289.0969, 77.5784, 75.2578, 72.5555, 74.7555, -11.0503),
    (207, 0.0001): (-0.4974, 0.4952, 0.0025, 0.0, 0.0001, -0.9952),
    (207, 0.01): (-0.4824, 0.4955, 0.0099, 0.0002, 0.0075, -0.9955),
    (207, 0.1): (-0.3332, 0.5225, 0.0772, 0.0141, 0.0747, -1.0216),
    (207, 1.0): (1.6834, 1.2497, 0.7524, 0.4798, 0.7487, -1.5472),
    (207, 10.0): (26.2749, 8.5584, 7.5051, 6.6171, 7.4957, -3.9015),
    (207, 100.0): (288.5852, 77.9605, 75.0143, 72.2002, 74.9865, -11.5763),
    (1836, 0.0001): (-0.4996, 0.4994, 0.0003, 0.0, 0.0001, -0.9994),
    (1836, 0.01): (-0.4846, 0.4998, 0.0078, 0.0002, 0.0075, -0.9998),
    (1836, 0.1): (-0.3354, 0.5264, 0.0752, 0.0138, 0.075, -1.0258),
    (1836, 1.0): (1.6801, 1.2535, 0.7503, 0.4781, 0.7499, -1.5517),
    (1836, 10.0): (26.2665, 8.5657, 7.5006, 6.6114, 7.4995, -3.9106),
    (1836, 100.0): (288.5604, 77.98, 75.0016, 72.182, 74.9985, -11.6017),
}


# E, T_e, T_pcp, V_ext_e, V_ext_pcp, V_ep from the MC-HF wavefunction
ENERGIES_MCHF = {
    (1, 0.0001): (-0.1085, 0.0543, 0.0543, 0.0, 0.0, -0.217),
    (1, 0.01): (-0.1064, 0.0563, 0.0563, 0.001, 0.001, -0.2211),
    (1, 0.1): (0.0122, 0.1275, 0.1275, 0.0445, 0.0445, -0.332),
    (1, 1.0): (2.1719, 0.8656, 0.8656, 0.6505, 0.6505, -0.8604),
    (1, 10.0): (27.4481, 7.83, 7.83, 7.1847, 7.1847, -2.5813),
    (1, 100.0): (291.9928, 76.0116, 76.0116, 74.0027, 74.0027, -8.0358),
    (10, 0.0001): (-0.257, 0.1902, 0.0668, 0.0, 0.0, -0.5141),
    (10, 0.01): (-0.2559, 0.1917, 0.0677, 0.0003, 0.0008, -0.5164),
    (10, 0.1): (-0.1701, 0.2659, 0.1173, 0.023, 0.048, -0.6244),
    (10, 1.0): (1.8109, 1.0909, 0.7975, 0.5277, 0.7054, -1.3105),
    (10, 10.0): (26.4904, 8.3633, 7.5968, 6.7457, 7.4045, -3.6199),
    (10, 100.0): (289.1358, 77.533, 75.2628, 72.5725, 74.7381, -10.9706),
    (207, 0.0001): (-0.4147, 0.3804, 0.0343, 0.0, 0.0, -0.8294),
    (207, 0.01): (-0.4129, 0.3829, 0.0354, 0.0002, 0.0016, -0.8329),
    (207, 0.1): (-0.3066, 0.4605, 0.0864, 0.015, 0.0651, -0.9336),
    (207, 1.0): (1.6904, 1.236, 0.7549, 0.482, 0.7451, -1.5277),
    (207, 10.0): (26.2789, 8.5523, 7.5065, 6.6191, 7.4935, -3.8925),
    (207, 100.0): (288.5885, 77.9558, 75.0155, 72.2021, 74.9845, -11.5694),
    (1836, 0.0001): (-0.4664, 0.4514, 0.015, 0.0, 0.0, -0.9328),
    (1836, 0.01): (-0.4628, 0.4561, 0.0171, 0.0002, 0.0033, -0.9393),
    (1836, 0.1): (-0.3309, 0.5142, 0.0772, 0.0139, 0.0729, -1.0091),
    (1836, 1.0): (1.681, 1.2516, 0.7507, 0.4784, 0.7493, -1.549),
    (1836, 10.0): (26.267, 8.5649, 7.5008, 6.6117, 7.4992, -3.9095),
    (1836, 100.0): (288.5608, 77.9793, 75.0018, 72.1824, 74.9982, -11.601),
}


# optimized [7s:7s] exponents: (electron, PCP)
BASIS_7S7S = {
    (1, 0.0001): (
        (0.007, 0.01, 0.014, 0.024, 0.032, 0.056, 0.11),
        (0.015, 0.029, 0.046, 0.065, 0.106, 0.16, 0.195),
    ),
    (1, 0.01): (
        (0.012, 0.021, 0.033, 0.05, 0.093, 0.208, 0.27),
        (0.012, 0.015, 0.03, 0.062, 0.153, 0.19, 0.513),
    ),
    (1, 0.1): (
        (0.053, 0.074, 0.121, 0.155, 0.422, 0.515, 0.664),
        (0.044, 0.07, 0.136, 0.297, 5.94, 8.404, 11.981),
    ),
    (1, 1.0): (
        (0.465, 0.542, 0.764, 1.004, 1.932, 3.817, 5.42),
        (0.387, 0.5, 0.641, 1.107, 1.266, 1.423, 1.741),
    ),
    (1, 10.0): (
        (4.765, 5.125, 7.982, 19.734, 36.104, 59.889, 73.122),
        (3.047, 3.85, 5.072, 7.734, 8.4, 10.838, 13.891),
    ),
    (1, 100.0): (
        (39.372, 44.683, 51.76, 127.57, 165.38, 346.08, 402.56),
        (48.75, 52.497, 81.117, 120.72, 122.03, 167.2, 204.92),
    ),
    (10, 0.0001): (
        (0.023, 0.025, 0.044, 0.087, 0.176, 0.371, 0.806),
        (0.195, 0.32, 0.535, 1.046, 1.377, 4.404, 6.356),
    ),
    (10, 0.01): (
        (0.035, 0.045, 0.066, 0.132, 0.227, 0.414, 0.868),
        (0.291, 0.532, 1.261, 1.64, 5.44, 7.404, 11.856),
    ),
    (10, 0.1): (
        (0.046, 0.073, 0.078, 0.144, 0.289, 0.614, 1.328),
        (0.57, 0.796, 1.035, 1.14, 5.94, 8.904, 11.981),
    ),
    (10, 1.0): (
        (0.441, 0.569, 1.004, 2.153, 4.763, 7.338, 13.339),
        (4.438, 5.375, 10.137, 20.08, 136.9, 199.04, 292.4),
    ),
    (10, 10.0): (
        (4.96, 5.125, 8.104, 18.269, 47.628, 251.25, 567.7),
        (37.4, 45.9, 51.0, 118.67, 172.6, 425.78, 467.5),
    ),
    (10, 100.0): (
        (37.907, 40.289, 51.76, 120.98, 316.3, 816.63, 1702.5),
        (321.25, 486.25, 611.9, 949.0, 1359.0, 1977.8, 2902.4),
    ),
    (207, 0.0001): (
        (0.056, 0.128, 0.291, 0.667, 1.523, 3.337, 6.866),
        (2.035, 3.07, 4.14, 5.796, 8.44, 11.404, 13.856),
    ),
    (207, 0.01): (
        (0.057, 0.129, 0.291, 0.663, 1.512, 3.333, 6.958),
        (1.035, 2.07, 4.14, 5.796, 6.44, 11.404, 15.856),
    ),
    (207, 0.1): (
        (0.078, 0.144, 0.289, 0.614, 1.422, 3.698, 10.765),
        (1.035, 2.07, 4.14, 5.796, 8.94, 11.404, 14.481),
    ),
    (207, 1.0): (
        (0.441, 0.569, 1.004, 2.255, 5.838, 17.339, 61.67),
        (25.875, 56.75, 103.51, 124.08, 178.4, 281.04, 388.9),
    ),
    (207, 10.0): (
        (5.125, 5.253, 8.104, 18.269, 48.8, 151.25, 567.7),
        (113.5, 237.4, 258.4, 268.67, 472.6, 1017.5, 1038.3),
    ),
    (207, 100.0): (
        (37.419, 38.824, 51.76, 123.66, 349.99, 1152.6, 4702.5),
        (258.75, 517.5, 1035.0, 1449.0, 2484.0, 10086.0, 10353.0),
    ),
    (1836, 0.0001): (
        (0.057, 0.129, 0.291, 0.667, 1.624, 4.485, 14.304),
        (2.035, 3.07, 4.14, 5.796, 8.94, 12.404, 20.856),
    ),
    (1836, 0.01): (
        (0.057, 0.129, 0.289, 0.669, 1.656, 4.665, 15.364),
        (1.035, 2.07, 4.14, 5.796, 6.94, 13.654, 22.544),
    ),
    (1836, 0.1): (
        (0.07, 0.135, 0.306, 0.782, 2.24, 7.488, 32.452),
        (1.035, 2.07, 4.14, 5.796, 8.94, 11.404, 94.481),
    ),
    (1836, 1.0): (
        (0.56, 1.072, 2.587, 6.416, 18.108, 64.259, 291.94),
        (25.875, 56.75, 103.51, 174.08, 328.4, 913.9, 931.04),
    ),
    (1836, 10.0): (
        (5.122, 8.295, 18.299, 48.678, 157.11, 605.79, 2864.6),
        (113.5, 268.67, 862.4, 1017.5, 6508.4, 8722.6, 9288.3),
    ),
    (1836, 100.0): (
        (31.622, 39.372, 51.775, 133.19, 421.28, 1634.0, 9241.6),
        (258.75, 517.5, 1035.0, 1449.0, 79047.0, 90086.0, 92853.0),
    ),
}


MOMENT_COLUMNS = ("r_mean_exact", "r_mean_mchf", "r_var_exact", "r_var_mchf")
CORRELATION_COLUMNS = (
    "E_corr_ref_indep", "E_corr_ref_dep", "dT_e", "dT_pcp", "dV_ext_e", "dV_ext_pcp", "dV_ep",
)
RADII_COLUMNS = ("r_c_e", "r_c_pcp")
ADIABATIC_COLUMNS = ("E_ad", "E_non_ad", "Delta_E")
ENERGY_COLUMNS = ("E", "T_e", "T_pcp", "V_ext_e", "V_ext_pcp", "V_ep")


def lookup(table, m_pcp, omega):
    """Return the entry for ``(m_pcp, omega)`` or ``None`` when off-grid."""
    for (m, w), row in table.items():
        if abs(m - m_pcp) < 1e-9 and abs(w - omega) <= 1e-12 * max(1.0, w):
            return row
    return None
