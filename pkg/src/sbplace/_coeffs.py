"""Coefficient tables for diagonal-norm SBP operators of interior orders
2, 4 and 6.

Norm weights, first-derivative closures and the boundary-derivative rows
are exact rationals (stored as Fractions and converted on demand).  The
remainder of the narrow-stencil second derivative is assembled from
undivided-difference quadratic forms; its interior weights are exact and
its boundary corrections live in _tables (doubles).
"""

from fractions import Fraction as Fr

import numpy as np

SUPPORTED_ORDERS = (2, 4, 6)

# diagonal norm weights h*(w_1, ..., w_s, 1, ..., 1, w_s, ..., w_1)
H_WEIGHTS = {
    2: [Fr(1, 2)],
    4: [Fr(17, 48), Fr(59, 48), Fr(43, 48), Fr(49, 48)],
    6: [Fr(13649, 43200), Fr(12013, 8640), Fr(2711, 4320),
        Fr(5359, 4320), Fr(7877, 8640), Fr(43801, 43200)],
}

# first-derivative boundary closures (rows of D1, unscaled by 1/h)
D1_BLOCKS = {
    2: [[Fr(-1), Fr(1)]],
    4: [
        [Fr(-24, 17), Fr(59, 34), Fr(-4, 17), Fr(-3, 34), Fr(0), Fr(0)],
        [Fr(-1, 2), Fr(0), Fr(1, 2), Fr(0), Fr(0), Fr(0)],
        [Fr(4, 43), Fr(-59, 86), Fr(0), Fr(59, 86), Fr(-4, 43), Fr(0)],
        [Fr(3, 98), Fr(0), Fr(-59, 98), Fr(0), Fr(32, 49), Fr(-4, 49)],
    ],
    6: [
        [Fr(-21600, 13649), Fr(104009, 54596), Fr(30443, 81894),
         Fr(-33311, 27298), Fr(16863, 27298), Fr(-15025, 163788),
         Fr(0), Fr(0), Fr(0)],
        [Fr(-104009, 240260), Fr(0), Fr(-311, 72078), Fr(20229, 24026),
         Fr(-24337, 48052), Fr(36661, 360390), Fr(0), Fr(0), Fr(0)],
        [Fr(-30443, 162660), Fr(311, 32532), Fr(0), Fr(-11155, 16266),
         Fr(41287, 32532), Fr(-21999, 54220), Fr(0), Fr(0), Fr(0)],
        [Fr(33311, 107180), Fr(-20229, 21436), Fr(485, 1398), Fr(0),
         Fr(4147, 21436), Fr(25427, 321540), Fr(72, 5359), Fr(0), Fr(0)],
        [Fr(-16863, 78770), Fr(24337, 31508), Fr(-41287, 47262),
         Fr(-4147, 15754), Fr(0), Fr(342523, 472620), Fr(-1296, 7877),
         Fr(144, 7877), Fr(0)],
        [Fr(15025, 525612), Fr(-36661, 262806), Fr(21999, 87602),
         Fr(-25427, 262806), Fr(-342523, 525612), Fr(0),
         Fr(32400, 43801), Fr(-6480, 43801), Fr(720, 43801)],
    ],
}

# central interior stencils of D1, offsets -q/2..q/2
D1_INTERIOR = {
    2: {-1: Fr(-1, 2), 1: Fr(1, 2)},
    4: {-2: Fr(1, 12), -1: Fr(-2, 3), 1: Fr(2, 3), 2: Fr(-1, 12)},
    6: {-3: Fr(-1, 60), -2: Fr(3, 20), -1: Fr(-3, 4),
        1: Fr(3, 4), 2: Fr(-3, 20), 3: Fr(1, 60)},
}

# one-sided boundary derivative rows of order q/2+1 (rows of D-hat)
DHAT_ROWS = {
    2: [Fr(-3, 2), Fr(2), Fr(-1, 2)],
    4: [Fr(-11, 6), Fr(3), Fr(-3, 2), Fr(1, 3)],
    6: [Fr(-25, 12), Fr(4), Fr(-3), Fr(4, 3), Fr(-1, 4)],
}

# dimensionless positivity constants
THETA_H = {q: H_WEIGHTS[q][0] for q in SUPPORTED_ORDERS}

# borrowing constants and cutoff counts; theta_R values are those computed
# from the remainder actually shipped here (floor-rounded so that the
# default penalties stay on the provably stable side)
M_B = {2: 2, 4: 4, 6: 7}
THETA_R = {2: 1.0, 4: 0.5775, 6: 0.369}

BOUNDARY_WIDTH = {2: 1, 4: 4, 6: 6}     # closure rows of D1
BLOCK_WIDTH = {2: 3, 4: 6, 6: 9}        # remainder correction block w


def remainder_tables(q):
    """(generators, gammas, first_k, deltas) for the remainder builder.

    generators: list of (offsets, values); gammas: (2J+1, g, g) stack of
    symmetric Gram blocks; deltas: boundary corrections, one w x w block
    per coefficient index starting at first_k.
    """
    from ._tables import GENERATORS, GAMMA, DELTA, FIRST_K
    gens = [(np.array(o, dtype=int), np.array(v, dtype=float))
            for (o, v) in GENERATORS[q]]
    return gens, np.asarray(GAMMA[q], dtype=float), FIRST_K[q], \
        np.asarray(DELTA[q], dtype=float)


def min_points(q):
    """Smallest grid that separates the two boundary closures."""
    return 2 * max(BLOCK_WIDTH[q], BOUNDARY_WIDTH[q], M_B[q])
