"""Hand-derived closed-form fixtures shared by metric and acceptance tests.

Every value below was worked out on paper from the metric definitions;
nothing here is produced by the code under test.
"""

import math

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

UNIT_SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
EQUILATERAL = [(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2.0)]
RIGHT_TRIANGLE = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
RECT_10_1 = [(0.0, 0.0), (10.0, 0.0), (10.0, 1.0), (0.0, 1.0)]
L_SHAPE = [(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)]
U_SHAPE = [
    (0.0, 0.0), (3.0, 0.0), (3.0, 3.0), (2.0, 3.0),
    (2.0, 1.0), (1.0, 1.0), (1.0, 3.0), (0.0, 3.0),
]

# metric -> value, per fixture; derivations in comments
METRIC_FIXTURES = {
    "unit_square": (UNIT_SQUARE, {
        "nE": 4, "IC": 0.5, "CC": SQRT2 / 2.0, "CR": 1.0 / SQRT2,
        "AR": 1.0, "KE": 1.0, "KAR": 1.0, "PAR": math.pi / 4.0,
        "MA": math.pi / 2.0, "mA": math.pi / 2.0, "SE": 1.0, "ER": 1.0,
        "MPD": 1.0, "NPD": 1.0 / SQRT2, "SRG": 1.0 / SQRT2,
    }),
    # side 1: r = sqrt(3)/6, R = sqrt(3)/3, area sqrt(3)/4, perimeter 3
    "equilateral": (EQUILATERAL, {
        "nE": 3, "IC": SQRT3 / 6.0, "CC": SQRT3 / 3.0, "CR": 0.5,
        "AR": SQRT3 / 4.0, "KE": SQRT3 / 4.0, "KAR": 1.0,
        "PAR": math.pi * SQRT3 / 9.0,
        "MA": math.pi / 3.0, "mA": math.pi / 3.0, "SE": 1.0, "ER": 1.0,
        "MPD": 1.0, "NPD": SQRT3 / 2.0, "SRG": 0.5,
    }),
    # legs 1: r = A/s = (2-sqrt2)/2, hypotenuse diametral => CC = sqrt2/2
    "right_triangle": (RIGHT_TRIANGLE, {
        "nE": 3, "IC": (2.0 - SQRT2) / 2.0, "CC": SQRT2 / 2.0, "CR": SQRT2 - 1.0,
        "AR": 0.5, "KE": 0.5, "KAR": 1.0,
        "PAR": 2.0 * math.pi / (6.0 + 4.0 * SQRT2),
        "MA": math.pi / 4.0, "mA": math.pi / 2.0, "SE": 1.0, "ER": 1.0 / SQRT2,
        "MPD": 1.0, "NPD": 1.0 / SQRT2, "SRG": SQRT2 - 1.0,
    }),
    # 10x1: CC = half diagonal = sqrt(101)/2, PAR = 40*pi/22^2
    "rect_10_1": (RECT_10_1, {
        "nE": 4, "IC": 0.5, "CC": math.sqrt(101.0) / 2.0, "CR": 1.0 / math.sqrt(101.0),
        "AR": 10.0, "KE": 10.0, "KAR": 1.0, "PAR": 10.0 * math.pi / 121.0,
        "MA": math.pi / 2.0, "mA": math.pi / 2.0, "SE": 1.0, "ER": 0.1,
        "MPD": 1.0, "NPD": 1.0 / math.sqrt(101.0), "SRG": 1.0 / math.sqrt(101.0),
    }),
    # L: kernel [0,1]^2 (area 1, inscribed radius 1/2); inscribed circle
    # pinned by x=0, y=0 and the corner (1,1): r = 2-sqrt2; MEC spans
    # (2,0)-(0,2): centre (1,1), radius sqrt2
    "L_shape": (L_SHAPE, {
        "nE": 6, "IC": 2.0 - SQRT2, "CC": SQRT2, "CR": SQRT2 - 1.0,
        "AR": 3.0, "KE": 1.0, "KAR": 1.0 / 3.0, "PAR": 3.0 * math.pi / 16.0,
        "MA": math.pi / 2.0, "mA": 3.0 * math.pi / 2.0, "SE": 1.0, "ER": 0.5,
        "MPD": 1.0, "NPD": 1.0 / (2.0 * SQRT2), "SRG": 0.5 / SQRT2,
    }),
    # U (3x3 outer, unit prongs): area 9-2=7, perimeter 16; each prong plus
    # the base forms an L with unit arms, so the biggest circle is pinned by
    # two outer walls and the reentrant corner: r = 2-sqrt2 (the notch floor
    # edge y=1 spans x in [1,2] and caps any base-centred circle at 1/2);
    # MEC = outer square's circumcircle, r = 1.5*sqrt2
    "U_shape": (U_SHAPE, {
        "nE": 8, "IC": 2.0 - SQRT2, "CC": 1.5 * SQRT2, "CR": (2.0 - SQRT2) / (1.5 * SQRT2),
        "AR": 7.0, "KE": 0.0, "KAR": 0.0, "PAR": 7.0 * math.pi / 64.0,
        "MA": math.pi / 2.0, "mA": 3.0 * math.pi / 2.0, "SE": 1.0, "ER": 1.0 / 3.0,
        "MPD": 1.0, "NPD": 1.0 / (3.0 * SQRT2), "SRG": 0.0,
    }),
}
