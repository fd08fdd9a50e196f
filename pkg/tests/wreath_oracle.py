"""Independent matrix-representation oracle for the wreath group tests.

Builds the explicit 2n x 2n complex matrix of an element acting on n copies
of C^2 (cyclic factor as diag(zeta, zeta^-1), permutation shuffling blocks)
and reads the fixed-space codimension off the rank of A - I.  Kept separate
from the production cycle-twist formula on purpose.
"""

from __future__ import annotations

import numpy as np

from wreathflop import GroupParams, WreathElement, elements

RANK_TOL = 1e-9


def matrix_of(element: WreathElement) -> np.ndarray:
    m, n = element.params.m, element.params.n
    zeta = np.exp(2j * np.pi / m)
    inverse_perm = [0] * n
    for slot, image in enumerate(element.perm):
        inverse_perm[image] = slot
    matrix = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        twist = element.twists[i]
        block = np.diag([zeta**twist, zeta**-twist])
        source = inverse_perm[i]
        matrix[2 * i : 2 * i + 2, 2 * source : 2 * source + 2] = block
    return matrix


def fixed_codim_by_matrix(element: WreathElement) -> int:
    matrix = matrix_of(element)
    return int(np.linalg.matrix_rank(matrix - np.eye(matrix.shape[0]), tol=RANK_TOL))


def census_by_matrix(params: GroupParams) -> dict[int, int]:
    by_codim: dict[int, int] = {}
    for element in elements(params):
        codim = fixed_codim_by_matrix(element)
        by_codim[codim] = by_codim.get(codim, 0) + 1
    return by_codim
