"""Exact arithmetic for the wreath product of a cyclic group with the symmetric group.

Elements are pairs (twists, perm) with twists a vector of residues mod m and
perm a permutation of n slots; the group acts on (C^2)^n with the cyclic
factor embedded in Sp(2) as diag(zeta, zeta^-1) and perm permuting the C^2
blocks.  Multiplication twists the left factor's vector by its own
permutation:

    (g, s) * (h, t) = (g + s(h), s . t)      with  s(h)[i] = h[s^-1(i)]

so that the matrix of a product is the product of the matrices.  All values
are immutable and hashable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator

from .errors import ParameterError, SizeError

DEFAULT_CENSUS_BOUND = 10_000_000


@dataclass(frozen=True)
class GroupParams:
    """Order m of the cyclic factor and number n of permuted C^2 blocks."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ParameterError(f"m must be a positive integer, got {self.m}")
        if self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n}")

    @property
    def order(self) -> int:
        return self.m**self.n * math.factorial(self.n)


@dataclass(frozen=True)
class WreathElement:
    """A group element (twists, perm).

    ``twists[i]`` is a residue in [0, m); ``perm[i]`` is the 0-based image of
    slot i, so ``perm`` is a one-line permutation of range(n).
    """

    params: GroupParams
    twists: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        m, n = self.params.m, self.params.n
        if len(self.twists) != n:
            raise ParameterError(f"twist vector has length {len(self.twists)}, expected {n}")
        if any(not (0 <= t < m) for t in self.twists):
            raise ParameterError(f"twists must be residues in [0, {m}): {self.twists}")
        if sorted(self.perm) != list(range(n)):
            raise ParameterError(f"perm is not a permutation of range({n}): {self.perm}")


def identity(params: GroupParams) -> WreathElement:
    return WreathElement(params, (0,) * params.n, tuple(range(params.n)))


def _inverted(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, image in enumerate(perm):
        inv[image] = i
    return tuple(inv)


def compose(a: WreathElement, b: WreathElement) -> WreathElement:
    """Product a*b under the twisted multiplication (g,s)(h,t) = (g + s(h), s.t)."""
    if a.params != b.params:
        raise ParameterError(f"cannot compose elements of different groups: {a.params} vs {b.params}")
    m, n = a.params.m, a.params.n
    inv_a = _inverted(a.perm)
    twists = tuple((a.twists[i] + b.twists[inv_a[i]]) % m for i in range(n))
    perm = tuple(a.perm[b.perm[i]] for i in range(n))
    return WreathElement(a.params, twists, perm)


def inverse(a: WreathElement) -> WreathElement:
    """The unique element with compose(a, inverse(a)) == identity."""
    m, n = a.params.m, a.params.n
    twists = tuple((-a.twists[a.perm[j]]) % m for j in range(n))
    return WreathElement(a.params, twists, _inverted(a.perm))


def fixed_codim(a: WreathElement) -> int:
    """Codimension in C^(2n) of the subspace fixed by a.

    Each permutation cycle contributes a fixed C^2 exactly when the twists
    along the cycle sum to 0 mod m; every other cycle fixes only the origin
    of its block.  The result is always even.
    """
    m, n = a.params.m, a.params.n
    seen = [False] * n
    zero_cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        total = 0
        i = start
        while not seen[i]:
            seen[i] = True
            total += a.twists[i]
            i = a.perm[i]
        if total % m == 0:
            zero_cycles += 1
    return 2 * (n - zero_cycles)


def elements(params: GroupParams) -> Iterator[WreathElement]:
    """All m^n * n! elements, in a fixed deterministic order."""
    for perm in permutations(range(params.n)):
        for twists in product(range(params.m), repeat=params.n):
            yield WreathElement(params, twists, perm)


def random_element(params: GroupParams, rng: random.Random) -> WreathElement:
    twists = tuple(rng.randrange(params.m) for _ in range(params.n))
    perm = list(range(params.n))
    rng.shuffle(perm)
    return WreathElement(params, twists, tuple(perm))


@dataclass(frozen=True)
class CensusReport:
    """Element counts bucketed by fixed-space codimension.

    ``by_codim`` maps each realized even codimension to its element count;
    the counts sum to the group order and the codim-2 bucket counts the
    symplectic reflections.
    """

    params: GroupParams
    by_codim: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.by_codim.values())

    @property
    def order(self) -> int:
        return self.params.order

    @property
    def reflections(self) -> int:
        return self.by_codim.get(2, 0)

    def to_json_obj(self) -> dict:
        return {
            "m": self.params.m,
            "n": self.params.n,
            "order": self.order,
            "by_codim": {str(codim): count for codim, count in sorted(self.by_codim.items())},
        }


def census(params: GroupParams, *, bound: int = DEFAULT_CENSUS_BOUND) -> CensusReport:
    """Enumerate the whole group and bucket elements by fixed-space codimension."""
    if params.order > bound:
        raise SizeError(
            f"group order {params.order} exceeds the enumeration bound {bound}; "
            f"raise the bound to enumerate m={params.m}, n={params.n}"
        )
    by_codim: dict[int, int] = {}
    for element in elements(params):
        codim = fixed_codim(element)
        by_codim[codim] = by_codim.get(codim, 0) + 1
    return CensusReport(params, by_codim)
