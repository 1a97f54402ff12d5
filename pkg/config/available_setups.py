# config/available_setups.py
AVAILABLE_SETUPS = {
    "sl2-untwisted": "sl2_untwisted.yaml",
    "sl2-inner": "sl2_inner.yaml",
    "sl3-untwisted": "sl3_untwisted.yaml",
    "sl3-outer": "sl3_outer.yaml",
    "sl3-inner-shift": "sl3_inner_shift.yaml",
    "sp4-untwisted": "sp4_untwisted.yaml",
    "so8-triality": "so8_triality.yaml",
    "g2-untwisted": "g2_untwisted.yaml",
    "sl4-outer": "sl4_outer.yaml",
    "sl5-outer": "sl5_outer.yaml",
    "e6-outer": "e6_outer.yaml",
    "sl2-gl1": "sl2_gl1.yaml",
    "sl3-gl2": "sl3_gl2.yaml",
    "sp4-gl2": "sp4_gl2.yaml",
    "sl3-so3": "sl3_so3.yaml",
    "sl4-sp4": "sl4_sp4.yaml",
    "sl3-outer-vector": "sl3_outer_vector.yaml",
    "diag-sl2": "diag_sl2.yaml",
    "diag-sl3": "diag_sl3.yaml",
    "so6-so5": "so6_so5.yaml",
    "so7-so6": "so7_so6.yaml",
    "so8-so7": "so8_so7.yaml",
    "so9-so8": "so9_so8.yaml",
    "so5-identity": "so5_identity.yaml",
    "so5-minus-identity": "so5_minus_identity.yaml",
    "so6-diagonal": "so6_diagonal.yaml",
    "so7-reflection": "so7_reflection.yaml",
    "so8-reflection": "so8_reflection.yaml",
}
