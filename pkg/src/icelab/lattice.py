"""Ground-truth oracle: transfer-matrix and direct enumeration of the
DWBC six-vertex model.

Geometry and conventions (fixed here once, used everywhere):

* the lattice has N horizontal lines (numbered 1..N, top to bottom) and
  N vertical lines (numbered 1..N, right to left);
* domain wall boundary conditions: arrows on the left and right external
  horizontal edges point out of the lattice, arrows on the top and
  bottom external vertical edges point into it (down and up);
* a row state is the tuple of vertical-edge arrows between two
  consecutive horizontal lines; ``state[i]`` is the edge at position
  r = i+1 counted right to left, True meaning an up arrow;
* the vertex at horizontal line k and position r carries, in the
  inhomogeneous parametrization, the weights a(lam_r, nu_k),
  b(lam_r, nu_k), c = sin 2*eta.

The six admissible vertices are exactly the edge assignments with two
inward and two outward arrows.  They are encoded in ``VERTEX_TYPE`` by
the absolute directions (west-points-right, east-points-right,
south-points-up, north-points-up); all-parallel pairs are the a
vertices, the horizontal-in/vertical-out and horizontal-out/vertical-in
pairs are the c vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

import mpmath

from .algebra.field import is_exact, qdiv, rational
from .errors import (DegenerateWeights, CoincidingParameters,
                     PositionsOutOfRange, WidthMismatch)

RowState = tuple  # tuple of bools, True = up arrow, index i = position i+1

# (west right?, east right?, south up?, north up?) -> weight letter
VERTEX_TYPE = {
    (True, True, True, True): "a",
    (False, False, False, False): "a",
    (True, True, False, False): "b",
    (False, False, True, True): "b",
    (True, False, False, True): "c",
    (False, True, True, False): "c",
}


@dataclass(frozen=True)
class HomogeneousWeights:
    """Weights (a, b, c), either exact rationals or mpmath floats."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        if self.a == 0 or self.b == 0 or self.c == 0:
            raise DegenerateWeights(f"weights must be nonzero, got {self}")

    @property
    def t(self):
        return qdiv(self.b, self.a) if self.exact else self.b / self.a

    @property
    def delta(self):
        num = self.a**2 + self.b**2 - self.c**2
        den = 2 * self.a * self.b
        return qdiv(num, den) if self.exact else num / den

    @property
    def exact(self) -> bool:
        return is_exact(self.a) and is_exact(self.b) and is_exact(self.c)

    def vertex(self, letter: str, row: int, position: int):
        return getattr(self, letter)

    def integer_scaled(self) -> "HomogeneousWeights":
        """Same weight ratios with integer entries (probabilities are
        invariant under a common rescaling of a, b, c)."""
        if not self.exact:
            raise ValueError("only exact weights can be integer-scaled")
        qa, qb, qc = (rational(x) for x in (self.a, self.b, self.c))
        common = qa.denominator * qb.denominator * qc.denominator
        return HomogeneousWeights(int(qa * common), int(qb * common), int(qc * common))


@dataclass(frozen=True)
class InhomogeneousWeights:
    """Spectral parameters: lambdas on vertical lines (right to left),
    nus on horizontal lines (top to bottom), crossing parameter eta.

    The lambdas must be pairwise distinct; coinciding nus are allowed
    here (the partially homogeneous model sets all of them to zero) and
    distinctness is enforced where a formula actually divides by their
    differences.
    """

    lambdas: tuple
    nus: tuple
    eta: object

    def __post_init__(self):
        if len(self.lambdas) != len(self.nus):
            raise WidthMismatch("need as many lambdas as nus")
        if len(set(self.lambdas)) != len(self.lambdas):
            raise CoincidingParameters("lambdas must be pairwise distinct")

    @property
    def exact(self) -> bool:
        return False

    def vertex(self, letter: str, row: int, position: int):
        lam = self.lambdas[position - 1]
        nu = self.nus[row - 1]
        if letter == "a":
            return mpmath.sin(lam - nu + self.eta)
        if letter == "b":
            return mpmath.sin(lam - nu - self.eta)
        return mpmath.sin(2 * self.eta)


WeightSpec = Union[HomogeneousWeights, InhomogeneousWeights]


def weights_from_trig(lam, eta) -> HomogeneousWeights:
    """Homogeneous float weights a=sin(lam+eta), b=sin(lam-eta), c=sin 2 eta."""
    return HomogeneousWeights(mpmath.sin(lam + eta), mpmath.sin(lam - eta),
                              mpmath.sin(2 * eta))


# -- row states ------------------------------------------------------


def all_down(n: int) -> RowState:
    return (False,) * n


def all_up(n: int) -> RowState:
    return (True,) * n


def state_from_positions(n: int, positions: Sequence[int]) -> RowState:
    """Row state with up arrows exactly at the given positions, which must
    be strictly increasing within 1..n."""
    if any(not 1 <= r <= n for r in positions):
        raise PositionsOutOfRange(f"positions {positions} outside 1..{n}")
    if any(r2 <= r1 for r1, r2 in zip(positions, positions[1:])):
        raise PositionsOutOfRange(f"positions {positions} not strictly increasing")
    state = [False] * n
    for r in positions:
        state[r - 1] = True
    return tuple(state)


def positions_of(state: RowState) -> tuple:
    return tuple(i + 1 for i, up in enumerate(state) if up)


def flux_sector_states(n: int, s: int) -> list:
    """All C(n, s) states with s up arrows, lexicographic in position sets."""
    if not 0 <= s <= n:
        raise PositionsOutOfRange(f"flux {s} outside 0..{n}")
    return [state_from_positions(n, combo)
            for combo in itertools.combinations(range(1, n + 1), s)]


# -- transfer matrix -------------------------------------------------


def row_transfer_weight(top: RowState, bottom: RowState, weights: WeightSpec,
                        row_index: int):
    """Weight of one horizontal line: product of its vertex weights, or 0
    if no arrow assignment on the horizontal edges is consistent.

    The scan runs right to left; the right boundary edge points right
    (outgoing) and the final west edge must point left (outgoing).  At
    each vertex the west edge is forced by the ice rule.
    """
    n = len(top)
    if len(bottom) != n:
        raise WidthMismatch(f"row widths differ: {len(top)} vs {len(bottom)}")
    east = True
    weight = None
    for r in range(1, n + 1):
        n_up = top[r - 1]
        s_up = bottom[r - 1]
        inward = (not east) + s_up + (not n_up)
        west_in = 2 - inward
        if west_in not in (0, 1):
            return 0
        west = west_in == 1
        letter = VERTEX_TYPE[(west, east, s_up, n_up)]
        w = weights.vertex(letter, row_index, r)
        weight = w if weight is None else weight * w
        east = west
    if east:
        return 0
    return weight


def _up_count_after_row(n: int, k: int) -> int:
    # DWBC forces exactly k up arrows below horizontal line k
    return k


@lru_cache(maxsize=None)
def forward_vectors(n: int, weights: WeightSpec) -> tuple:
    """vec[k] maps each row state below line k to the weight of folding
    rows 1..k down from the all-down top boundary."""
    vecs = [{all_down(n): 1 if weights.exact else mpmath.mpf(1)}]
    for k in range(1, n + 1):
        prev = vecs[-1]
        nxt = {}
        for below in flux_sector_states(n, _up_count_after_row(n, k)):
            total = None
            for above, w_above in prev.items():
                w = row_transfer_weight(above, below, weights, k)
                if w == 0:
                    continue
                term = w_above * w
                total = term if total is None else total + term
            if total is not None and total != 0:
                nxt[below] = total
        vecs.append(nxt)
    return tuple(vecs)


@lru_cache(maxsize=None)
def backward_vectors(n: int, weights: WeightSpec) -> tuple:
    """vec[k] maps each row state below line k to the weight of folding
    rows k+1..n down to the all-up bottom boundary."""
    vecs = [None] * (n + 1)
    vecs[n] = {all_up(n): 1 if weights.exact else mpmath.mpf(1)}
    for k in range(n - 1, -1, -1):
        nxt = vecs[k + 1]
        cur = {}
        for above in flux_sector_states(n, _up_count_after_row(n, k)):
            total = None
            for below, w_below in nxt.items():
                w = row_transfer_weight(above, below, weights, k + 1)
                if w == 0:
                    continue
                term = w * w_below
                total = term if total is None else total + term
            if total is not None and total != 0:
                cur[above] = total
        vecs[k] = cur
    return tuple(vecs)


def partition_function(n: int, weights: WeightSpec):
    """Z_N by folding the transfer matrix top to bottom."""
    if isinstance(weights, InhomogeneousWeights) and len(weights.lambdas) != n:
        raise WidthMismatch("inhomogeneous parameters must match the lattice size")
    return forward_vectors(n, weights)[n][all_up(n)]


def partition_function_bottom_up(n: int, weights: WeightSpec):
    """Z_N folded bottom to top; must agree with the forward fold."""
    return backward_vectors(n, weights)[0][all_down(n)]


def z_top_enum(n: int, s: int, positions: Sequence[int], weights: WeightSpec):
    """Partition function of the top s x N part, with up arrows at the
    given positions on its lower boundary."""
    state = state_from_positions(n, positions)
    if len(positions) != s:
        raise PositionsOutOfRange(f"expected {s} positions, got {len(positions)}")
    return forward_vectors(n, weights)[s].get(state, 0)


def z_bot_enum(n: int, s: int, positions: Sequence[int], weights: WeightSpec):
    """Partition function of the bottom (N-s) x N part, with up arrows at
    the given positions on its upper boundary."""
    state = state_from_positions(n, positions)
    if len(positions) != s:
        raise PositionsOutOfRange(f"expected {s} positions, got {len(positions)}")
    return backward_vectors(n, weights)[s].get(state, 0)


def _ratio(num, den):
    return qdiv(num, den) if is_exact(den) else num / den


def _probability_weights(weights: WeightSpec) -> WeightSpec:
    # probabilities are invariant under rescaling (a,b,c); integer weights
    # keep the transfer arithmetic in fast machine/bignum integers
    if isinstance(weights, HomogeneousWeights) and weights.exact:
        return weights.integer_scaled()
    return weights


def rcp_enum(n: int, s: int, positions: Sequence[int], weights: WeightSpec):
    """Probability of the arrow pattern `positions` on the vertical edges
    between horizontal lines s and s+1."""
    w = _probability_weights(weights)
    num = z_top_enum(n, s, positions, w) * z_bot_enum(n, s, positions, w)
    return _ratio(num, partition_function(n, w))


def boundary_correlation(n: int, weights: WeightSpec, r: int):
    """Probability that the single up arrow between horizontal lines 1 and
    2 sits at position r.  For n == 1 the bottom part is empty and the
    value is 1 by the sum rule."""
    return rcp_enum(n, 1, (r,), weights)


def efp_enum(n: int, r: int, s: int, weights: WeightSpec):
    """Probability that the s x (N-r) top-left corner is frozen: all up
    arrows between lines s and s+1 sit at positions <= r."""
    if not 1 <= r <= n:
        raise PositionsOutOfRange(f"r={r} outside 1..{n}")
    if not 0 <= s <= n:
        raise PositionsOutOfRange(f"s={s} outside 0..{n}")
    w = _probability_weights(weights)
    fwd = forward_vectors(n, w)[s]
    bwd = backward_vectors(n, w)[s]
    z = partition_function(n, w)
    total = 0
    for combo in itertools.combinations(range(1, r + 1), s):
        state = state_from_positions(n, combo)
        if state in fwd and state in bwd:
            total = total + fwd[state] * bwd[state]
    return _ratio(total, z)


# -- direct enumeration (independent of the transfer matrix) ----------


def dwbc_configurations(n: int) -> Iterator[tuple]:
    """Backtracking enumeration of all DWBC configurations.

    Yields (letters, vertical_edges): ``letters[k][col]`` is the vertex
    letter at horizontal line k+1 and array column col (left to right, so
    position r = n - col), ``vertical_edges[k]`` is the row state below
    horizontal line k (index 0 = the all-down top boundary), stored in
    position order like RowState.
    """
    top = all_down(n)
    letters: list = []
    vert = [top]

    def scan_rows(k: int):
        if k > n:
            if vert[-1] == all_up(n):
                yield tuple(letters), tuple(vert)
            return
        above = vert[-1]
        for row_letters, below in _row_assignments(n, above):
            letters.append(row_letters)
            vert.append(below)
            yield from scan_rows(k + 1)
            letters.pop()
            vert.pop()

    yield from scan_rows(1)


def _row_assignments(n: int, above: RowState) -> Iterator[tuple]:
    """All consistent (letters, below-state) pairs for one horizontal line."""
    results = []

    def extend(col: int, west: bool, letters: tuple, below: tuple):
        if col == n:
            if west:  # east boundary edge must point right (outgoing)
                results.append((letters, below))
            return
        # array column col is position r = n - col; north edge from `above`
        r = n - col
        n_up = above[r - 1]
        for east in (False, True):
            for s_up in (False, True):
                inward = west + (not east) + s_up + (not n_up)
                if inward != 2:
                    continue
                letter = VERTEX_TYPE[(west, east, s_up, n_up)]
                nb = list(below)
                nb[r - 1] = s_up
                extend(col + 1, east, letters + (letter,), tuple(nb))

    extend(0, False, (), (False,) * n)
    for letters, below in results:
        yield letters, below


def brute_force_partition(n: int, weights: WeightSpec):
    """Sum of configuration weights over the explicit enumeration."""
    total = 0
    for letters, _ in dwbc_configurations(n):
        w = None
        for k, row in enumerate(letters, start=1):
            for col, letter in enumerate(row):
                x = weights.vertex(letter, k, n - col)
                w = x if w is None else w * x
        total = total + w
    return total


def brute_force_rcp(n: int, s: int, positions: Sequence[int], weights: WeightSpec):
    """Row configuration probability by filtering the enumeration on the
    cut edges between lines s and s+1."""
    target = state_from_positions(n, positions)
    matched = 0
    total = 0
    for letters, vert in dwbc_configurations(n):
        w = None
        for k, row in enumerate(letters, start=1):
            for col, letter in enumerate(row):
                x = weights.vertex(letter, k, n - col)
                w = x if w is None else w * x
        total = total + w
        if vert[s] == target:
            matched = matched + w
    return _ratio(matched, total)


# -- bundled observables ----------------------------------------------


@dataclass(frozen=True)
class ModelObservables:
    """Everything the oracle knows about one (N, weights) model."""

    n: int
    z: object
    boundary: dict       # r -> H_N^{(r)}
    efp: dict            # (r, s) -> F_N^{(r,s)}
    rcp: dict            # (s, positions) -> H_{N,s}^{(positions)}
    z_top: dict          # (s, positions) -> top partition function
    z_bot: dict          # (s, positions) -> bottom partition function

    @staticmethod
    def compute(n: int, weights: WeightSpec) -> "ModelObservables":
        z = partition_function(n, weights)
        boundary = {r: boundary_correlation(n, weights, r) for r in range(1, n + 1)}
        rcp = {}
        ztop = {}
        zbot = {}
        for s in range(n + 1):
            for state in flux_sector_states(n, s):
                pos = positions_of(state)
                ztop[(s, pos)] = z_top_enum(n, s, pos, weights)
                zbot[(s, pos)] = z_bot_enum(n, s, pos, weights)
                rcp[(s, pos)] = rcp_enum(n, s, pos, weights)
        efp = {(r, s): efp_enum(n, r, s, weights)
               for r in range(1, n + 1) for s in range(n + 1)}
        return ModelObservables(n, z, boundary, efp, rcp, ztop, zbot)
