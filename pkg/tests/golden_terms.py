"""Hand-entered expected term lists for the golden polynomial tests.

These were transcribed independently from the published formulas for the
characteristic polynomial and its bisector-direction transform; the tests
diff them against the polynomials the library constructs.  Tuples are
(coefficient, t-exp, pt-exp, qt-exp).
"""

# Transformed polynomial, direction (1, 1), variables (t, pt, qt).
SHIFTED_TERMS = [
    (1, 10, 0, 0),
    # t^8 block
    (3, 8, 0, 4), (-10, 8, 1, 3), (-13, 8, 2, 2), (-8, 8, 3, 1), (-2, 8, 4, 0),
    # t^6 block
    (1, 6, 8, 0), (-40, 6, 1, 7), (-136, 6, 4, 4), (2, 6, 0, 8), (14, 6, 6, 2),
    (-148, 6, 2, 6), (-208, 6, 3, 5), (8, 6, 7, 1), (-28, 6, 5, 3),
    # t^4 block (all negated)
    (-10, 4, 9, 3), (-302, 4, 2, 10), (-836, 4, 5, 7), (-60, 4, 1, 11),
    (-200, 4, 7, 5), (-704, 4, 3, 9), (-1, 4, 10, 2), (-494, 4, 6, 6),
    (-2, 4, 0, 12), (-956, 4, 4, 8), (-55, 4, 8, 4),
    # t^2 block (all negated)
    (-6, 2, 10, 6), (-1444, 2, 5, 11), (-1230, 2, 6, 10), (-712, 2, 7, 9),
    (-40, 2, 1, 15), (-1160, 2, 4, 12), (-624, 2, 3, 13), (-269, 2, 8, 8),
    (-3, 2, 0, 16), (-60, 2, 9, 7), (-212, 2, 2, 14),
    # t^0 block
    (-210, 0, 4, 16), (-1, 0, 10, 10), (-1, 0, 0, 20), (-210, 0, 6, 14),
    (-120, 0, 7, 13), (-45, 0, 8, 12), (-10, 0, 9, 11), (-10, 0, 1, 19),
    (-120, 0, 3, 17), (-252, 0, 5, 15), (-45, 0, 2, 18),
]

# Base polynomial, variables (t, p, q): expanded coefficients of the five
# published factored blocks.
BASE_TERMS = [
    (1, 10, 0, 0),
    # (2q^2+p^2)(3q^2-2p^2) t^8
    (6, 8, 0, 4), (-1, 8, 2, 2), (-2, 8, 4, 0),
    # t^6
    (1, 6, 0, 8), (10, 6, 2, 6), (4, 6, 4, 4), (-14, 6, 6, 2), (1, 6, 8, 0),
    # -p^2 q^2 (q^8 - 14 p^2 q^6 + 4 p^4 q^4 + 10 p^6 q^2 + p^8) t^4
    (-1, 4, 2, 10), (14, 4, 4, 8), (-4, 4, 6, 6), (-10, 4, 8, 4), (-1, 4, 10, 2),
    # -p^6 q^6 (q^2 + 2p^2)(3p^2 - 2q^2) t^2
    (2, 2, 6, 10), (1, 2, 8, 8), (-6, 2, 10, 6),
    # constant
    (-1, 0, 10, 10),
]
