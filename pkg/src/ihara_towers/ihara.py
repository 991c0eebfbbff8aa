"""The Ihara polynomial of a voltaged graph and the tower tree-count formula.

For a connected base graph with nonzero Euler characteristic and a voltage
assignment whose monodromy index is 1, the number of spanning trees of every
finite layer is

    kappa(X_n) = (-1)**(b*(n-1)) * kappa(X) * n**(e-1) * D_n / D_1

where D_n is the Pierce-Lehmer value Res(J, t**n - 1) of the distinguished
factor J of the Ihara polynomial.  This module computes the decomposition
(b, e, J) and both sides of that identity.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import HypothesisViolation, ResourceLimit, VerificationMismatch
from .graph_core import (
    euler_characteristic,
    is_connected,
    spanning_tree_count,
    spanning_tree_count_bruteforce,
)
from .polyring import (
    IntPoly,
    LaurentPoly,
    divide_exact,
    geometric_quotient,
    int_matrix_det,
    is_self_reciprocal,
    ord_at,
    poly_matrix_det,
    resultant,
    vanishes_at_root_of_unity,
)
from .voltage_cover import VoltagedGraph, derived_graph, monodromy_index

MAX_BITS_ENV = "IHARA_TOWERS_MAX_BITS"

# Below this n the Sylvester determinant is the computation of record;
# above it the companion-matrix path takes over (the two are differentially
# tested against each other).
_SYLVESTER_N_LIMIT = 40


def _check_bits(value: int) -> int:
    cap = os.environ.get(MAX_BITS_ENV)
    if cap:
        if abs(value).bit_length() > int(cap):
            raise ResourceLimit(
                f"integer exceeds {MAX_BITS_ENV}={cap} bits"
            )
    return value


# ---------------------------------------------------------------------------
# Ihara polynomial and tower analysis
# ---------------------------------------------------------------------------


def ihara_polynomial(vg: VoltagedGraph) -> LaurentPoly:
    """det(D - A(t)) where A(t) twists each directed edge by t**voltage.

    A loop of voltage a contributes t**a + t**-a to its diagonal entry, so
    the result is always self-reciprocal and vanishes at t = 1.
    """
    g = vg.base
    if g.vertex_count == 0 or not is_connected(g):
        raise HypothesisViolation("base graph must be connected")
    n = g.vertex_count
    entries = [[{} for _ in range(n)] for _ in range(n)]
    for e in g.edge_pairs:
        a = vg.voltages[e.id]
        row = entries[e.origin][e.terminus]
        row[a] = row.get(a, 0) - 1
        row = entries[e.terminus][e.origin]
        row[-a] = row.get(-a, 0) - 1
    for v in range(n):
        entries[v][v][0] = entries[v][v].get(0, 0) + g.valency(v)
    matrix = [[LaurentPoly.from_dict(entries[i][j]) for j in range(n)] for i in range(n)]
    return poly_matrix_det(matrix)


@dataclass(frozen=True)
class TowerAnalysis:
    """Derived data of one tower: the Ihara polynomial and its decomposition."""

    vg: VoltagedGraph
    ihara: LaurentPoly
    b: int
    e: int
    i_poly: IntPoly
    j_poly: IntPoly
    delta1: int
    kappa_base: int
    chi: int


def _reject_roots_of_unity(j: IntPoly) -> None:
    """Hard error when J vanishes at a root of unity (impossible for a
    connected tower; a violation means corrupted input)."""
    if vanishes_at_root_of_unity(j):
        raise HypothesisViolation("J vanishes at a root of unity")


def analyze(vg: VoltagedGraph) -> TowerAnalysis:
    """Compute the full decomposition (b, e, J, D_1) of a tower.

    Requires a connected base with nonzero Euler characteristic and
    monodromy index 1; anything else raises HypothesisViolation.
    """
    g = vg.base
    if g.vertex_count == 0 or not is_connected(g):
        raise HypothesisViolation("base graph must be connected")
    chi = euler_characteristic(g)
    if chi == 0:
        raise HypothesisViolation("Euler characteristic vanishes")
    index = monodromy_index(vg)
    if index != 1:
        raise HypothesisViolation(
            f"monodromy index is {index}, tower layers are not all connected"
        )
    ihara = ihara_polynomial(vg)
    if ihara.is_zero():
        raise HypothesisViolation("Ihara polynomial vanishes identically")
    assert is_self_reciprocal(ihara)
    b = -ihara.low
    assert b >= 0
    i_poly = ihara.body
    assert i_poly.coeffs[0] != 0
    e = ord_at(i_poly, 1)
    assert e >= 1, "the Ihara polynomial must vanish at t = 1"
    linear = IntPoly((-1, 1))
    j_poly = i_poly
    for _ in range(e):
        j_poly = divide_exact(j_poly, linear)
    assert j_poly(1) != 0 and j_poly.coeffs[0] != 0
    _reject_roots_of_unity(j_poly)
    delta1 = resultant(j_poly, linear)
    assert delta1 != 0
    kappa = spanning_tree_count(g)
    return TowerAnalysis(vg, ihara, b, e, i_poly, j_poly, delta1, kappa, chi)


# ---------------------------------------------------------------------------
# Pierce-Lehmer values Res(f, t**n - 1)
# ---------------------------------------------------------------------------


def _companion_rows(f: IntPoly):
    """Companion matrix of the monic integer rescaling of f.

    With a = lead(f) and d = deg(f), the polynomial a**(d-1) * f(t/a) is
    monic over Z and its roots are a times the roots of f; the returned
    matrix is its companion.
    """
    d = f.degree
    a = f.lead
    scaled = [f.coeffs[i] * a ** (d - 1 - i) for i in range(d)]
    rows = [[0] * d for _ in range(d)]
    for j in range(d - 1):
        rows[j + 1][j] = 1
    for i in range(d):
        rows[i][d - 1] = -scaled[i]
    return rows


def _mat_mul(x, y):
    d = len(x)
    out = []
    for i in range(d):
        xi = x[i]
        row = []
        for j in range(d):
            s = 0
            for k in range(d):
                v = xi[k]
                if v:
                    s += v * y[k][j]
            row.append(s)
        out.append(row)
    return out


def _step_companion(m, scaled):
    """m @ companion, using the shift structure: one column of real work."""
    d = len(m)
    out = []
    for row in m:
        last = 0
        for k in range(d):
            v = row[k]
            if v:
                last -= v * scaled[k]
        out.append(row[1:] + [last])
    return out


def _delta_from_power(power_rows, a_pow_n: int, a: int, d: int, n: int) -> int:
    m = [row[:] for row in power_rows]
    for i in range(d):
        m[i][i] -= a_pow_n
    det = int_matrix_det(m)
    denom = a ** ((d - 1) * n)
    q, r = divmod(det, denom)
    assert r == 0, "companion determinant must be divisible by the scaling power"
    return q


def _pierce_lehmer_companion(f: IntPoly, n: int) -> int:
    d = f.degree
    a = f.lead
    scaled = [f.coeffs[i] * a ** (d - 1 - i) for i in range(d)]
    base = _companion_rows(f)
    power = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    bits = bin(n)[2:]
    for bit in bits:
        power = _mat_mul(power, power)
        if bit == "1":
            power = _step_companion(power, scaled)
    return _delta_from_power(power, a ** n, a, d, n)


def pierce_lehmer(f: IntPoly, n: int) -> int:
    """Res(f, t**n - 1), exactly.

    Small n goes through the Sylvester determinant; large n uses integer
    companion-matrix powers (an exact fast path, cross-checked in tests).
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if n < 1:
        raise ValueError("n must be positive")
    d = f.degree
    if d == 0:
        return _check_bits(f.coeffs[0] ** n)
    if n <= _SYLVESTER_N_LIMIT:
        cyc = IntPoly((-1,) + (0,) * (n - 1) + (1,))
        return _check_bits(resultant(f, cyc))
    return _check_bits(_pierce_lehmer_companion(f, n))


def pierce_lehmer_range(f: IntPoly, n_max: int) -> list:
    """[Res(f, t - 1), ..., Res(f, t**n_max - 1)] by iterated companion powers."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    d = f.degree
    if d == 0:
        c = f.coeffs[0]
        return [_check_bits(c ** n) for n in range(1, n_max + 1)]
    a = f.lead
    scaled = [f.coeffs[i] * a ** (d - 1 - i) for i in range(d)]
    power = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    a_pow = 1
    out = []
    for n in range(1, n_max + 1):
        power = _step_companion(power, scaled)
        a_pow *= a
        out.append(_check_bits(_delta_from_power(power, a_pow, a, d, n)))
    return out


# ---------------------------------------------------------------------------
# Tree counts along the tower
# ---------------------------------------------------------------------------


def _kappa_from_delta(ta: TowerAnalysis, n: int, delta_n: int) -> int:
    sign = -1 if (ta.b * (n - 1)) % 2 else 1
    value = sign * ta.kappa_base * n ** (ta.e - 1) * delta_n
    q, r = divmod(value, ta.delta1)
    assert r == 0, "Pierce-Lehmer quotient must be an integer"
    return _check_bits(q)


def kappa_via_formula(ta: TowerAnalysis, n: int) -> int:
    """Spanning trees of layer n from the Pierce-Lehmer quotient formula."""
    if n < 1:
        raise ValueError("n must be positive")
    return _kappa_from_delta(ta, n, pierce_lehmer(ta.j_poly, n))


def kappa_sequence(ta: TowerAnalysis, n_max: int) -> list:
    """[kappa(X_1), ..., kappa(X_n_max)] via one incremental sweep."""
    deltas = pierce_lehmer_range(ta.j_poly, n_max)
    return [_kappa_from_delta(ta, n, deltas[n - 1]) for n in range(1, n_max + 1)]


def resultant_row(ta: TowerAnalysis, n: int) -> int:
    """Res(I, 1 + t + ... + t**(n-1)); satisfies n * kappa(X_n) ==
    (-1)**(b*(n-1)) * kappa(X) * value."""
    if n < 1:
        raise ValueError("n must be positive")
    if n <= _SYLVESTER_N_LIMIT:
        return _check_bits(resultant(ta.i_poly, geometric_quotient(n)))
    # Identical by the factorization I = (t-1)**e * J and multiplicativity.
    value = n ** ta.e * pierce_lehmer(ta.j_poly, n)
    q, r = divmod(value, ta.delta1)
    assert r == 0
    return _check_bits(q)


@dataclass(frozen=True)
class TowerVerification:
    n_max: int
    mode: str
    kappas: tuple
    first_mismatch: tuple  # (n, formula, oracle) or None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None


def verify_tower(vg: VoltagedGraph, n_max: int, mode: str = "matrix-tree") -> TowerVerification:
    """Check the formula path against an independent tree count for n <= n_max.

    mode "matrix-tree" uses the reduced-Laplacian determinant of each derived
    graph; "bruteforce-small" uses subset enumeration (and therefore requires
    tiny layers).  The first disagreement is reported, not raised.
    """
    if mode not in ("matrix-tree", "bruteforce-small"):
        raise ValueError(f"unknown verification mode {mode!r}")
    ta = analyze(vg)
    deltas = pierce_lehmer_range(ta.j_poly, n_max)
    kappas = []
    first_mismatch = None
    for n in range(1, n_max + 1):
        predicted = _kappa_from_delta(ta, n, deltas[n - 1])
        layer = derived_graph(vg, n)
        if mode == "matrix-tree":
            actual = spanning_tree_count(layer)
        else:
            actual = spanning_tree_count_bruteforce(layer)
        kappas.append(predicted)
        if predicted != actual and first_mismatch is None:
            first_mismatch = (n, predicted, actual)
            break
    return TowerVerification(n_max, mode, tuple(kappas), first_mismatch)


def require_verified(vg: VoltagedGraph, n_max: int, mode: str = "matrix-tree") -> TowerVerification:
    """verify_tower, but a mismatch raises VerificationMismatch."""
    report = verify_tower(vg, n_max, mode)
    if not report.ok:
        n, predicted, actual = report.first_mismatch
        raise VerificationMismatch(
            f"layer {n}: formula gives {predicted}, oracle gives {actual}"
        )
    return report
