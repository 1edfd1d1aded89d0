"""Reference values used by the benchmark verifier and the tests.

Rows are plain tuples so they can be compared against computed values
without any parsing.
"""

# (n, p, D, dreg, DEG) for affine generic systems
REGULARITY_ROWS = [
    (9, 4, 2, 8, 896), (11, 4, 2, 8, 1920), (13, 4, 2, 8, 3520), (15, 4, 2, 8, 5824),
    (17, 4, 2, 8, 8960),
    (30, 2, 2, 4, 116), (35, 2, 2, 4, 136), (40, 2, 2, 4, 156),
    (6, 4, 3, 17, 3240), (8, 4, 3, 19, 45360),
    (7, 2, 3, 12, 1728), (8, 2, 3, 13, 4032), (9, 2, 3, 14, 9216),
]

# (n, p, D, DEG, density in percent of the multiplication matrix of the last variable)
DENSITY_ROWS = [
    (15, 3, 2, 728, 36.86), (16, 3, 2, 840, 36.91), (17, 3, 2, 960, 36.96),
    (18, 3, 2, 1088, 37.00), (19, 3, 2, 1224, 37.04), (20, 3, 2, 1368, 37.07),
    (15, 4, 2, 5824, 33.53), (16, 4, 2, 7280, 33.78), (17, 4, 2, 8960, 34.00),
    (18, 4, 2, 10880, 34.19), (19, 4, 2, 13056, 34.35), (20, 4, 2, 15504, 34.49),
    (21, 4, 2, 18240, 34.62),
    (9, 1, 3, 768, 22.45), (10, 1, 3, 1536, 20.84), (11, 1, 3, 3072, 20.59),
    (12, 1, 3, 6144, 19.32), (13, 1, 3, 12288, 19.12), (14, 1, 3, 24576, 18.08),
    (7, 2, 3, 1728, 20.73), (8, 2, 3, 4032, 20.26), (9, 2, 3, 9216, 19.47),
    (10, 2, 3, 20736, 19.08),
    (6, 3, 3, 2160, 17.52), (7, 3, 3, 6480, 17.39),
    (6, 4, 3, 3240, 13.63), (7, 4, 3, 12960, 14.55), (8, 4, 3, 45360, 15.15),
    (5, 2, 4, 1728, 14.46), (6, 2, 4, 6480, 14.11), (7, 2, 4, 23328, 13.64),
    (8, 2, 4, 81648, 13.26),
    (5, 3, 4, 3456, 11.36), (6, 3, 4, 17280, 11.73), (7, 3, 4, 77760, 11.83),
]

# (n, p, D, log C(n + dreg, n) / log DEG rounded to 2 decimals)
RATIO_ROWS = [
    (5, 4, 3, 1.53), (10, 4, 3, 1.36), (100, 4, 3, 1.73), (10000, 4, 3, 1.99),
    (10000, 9999, 3, 2.28), (30000, 29999, 3, 2.28), (1000, 500, 3, 1.32),
    (20000, 2, 3, 2.00), (500, 250, 1000, 1.09), (500, 2, 10000, 1.11),
]

DENSITY_BAND = 0.5  # percentage points


def reference_density(n: int, p: int, D: int):
    for row in DENSITY_ROWS:
        if row[:3] == (n, p, D):
            return row[4]
    return None
