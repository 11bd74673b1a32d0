"""Margolis homology and the classification of stably invertible modules.

For each operator Q_i acting on a graded module the homology
ker Q_i / im Q_i is computed degreewise with canonical representatives.
Over a rank-two exterior algebra a module whose two homologies are both
one-dimensional is pinned down by the pair of homology degrees; those
solve for a suspension a and a power b of the augmentation ideal, and
construct_model realizes the parameters as an explicit module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .browngitler import bp_homology
from .fplin import kernel_array, reduce_mod_rows, rref_array
from .monomials import Monomial, PrimeContext, format_monomial, sort_key
from .qmodules import (
    QModule,
    _shift_grading,
    free_module,
    quotient,
    submodule_generated,
    tensor,
    trivial_module,
)


def _label_text(label) -> str:
    if isinstance(label, Monomial):
        return format_monomial(label)
    return str(label)


def _vector_text(v: np.ndarray, labels) -> str:
    terms = []
    for c, lab in zip(v.tolist(), labels):
        if c == 0:
            continue
        text = _label_text(lab)
        terms.append(text if c == 1 else f"{c}*{text}")
    return " + ".join(terms) if terms else "0"


def _image_rows(module: QModule, i: int, d: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Echelon rows spanning Q_i(M_{d+drop}) inside M_d."""
    p = module.ctx.p
    mat = module.act(i, d + module.drop(i))
    if mat.size == 0:
        return np.zeros((0, module.dim(d)), dtype=np.int64), ()
    rows, pivots = rref_array(mat.T, p)
    return rows[: len(pivots)], tuple(pivots)


def _homology_at(module: QModule, i: int, d: int) -> np.ndarray:
    """Canonical representative rows of ker Q_i / im Q_i in degree d."""
    p = module.ctx.p
    cycles = kernel_array(module.act(i, d), p)
    if cycles.shape[0] == 0:
        return np.zeros((0, module.dim(d)), dtype=np.int64)
    borders, pivots = _image_rows(module, i, d)
    reduced = np.array([reduce_mod_rows(row, borders, pivots, p) for row in cycles])
    rows, piv = rref_array(reduced, p)
    return rows[: len(piv)]


@dataclass
class MargolisHomology:
    """Degreewise ker/im of one Q operator on a module.

    classes maps degree to echelon rows of representatives in the
    module's coordinates there; degrees with zero homology are omitted.
    """

    module: QModule
    q_index: int
    degrees: tuple[int, int]
    classes: dict[int, np.ndarray]

    def dim(self, d: int) -> int:
        rows = self.classes.get(d)
        return 0 if rows is None else rows.shape[0]

    @property
    def total_dim(self) -> int:
        return sum(rows.shape[0] for rows in self.classes.values())

    def support(self) -> list[int]:
        return sorted(self.classes)

    def dims(self) -> dict[int, int]:
        return {d: self.classes[d].shape[0] for d in self.support()}

    def to_json(self, name: str = "module") -> dict:
        return {
            "module": name,
            "Q": self.q_index,
            "classes": [
                {"degree": d, "representative": _vector_text(row, self.module.basis[d])}
                for d in self.support()
                for row in self.classes[d]
            ],
        }


def _certified_top(module: QModule, i: int) -> int | None:
    """Largest degree where im Q_i is fully visible, None when complete."""
    if module.truncated_above is None:
        return None
    return module.truncated_above - module.drop(i)


def margolis_homology(
    module: QModule, i: int, degrees: tuple[int, int] | None = None
) -> MargolisHomology:
    """Homology of Q_i on the module over an inclusive degree range.

    The default range is the module's full support, which is only valid
    for complete modules.  A truncated module certifies homology at d
    only when d + drop(i) is still inside the truncation, since boundary
    classes can arrive from above.
    """
    if i not in module.qs:
        raise KeyError(f"Q_{i} is not defined on this module")
    if degrees is None:
        if not module.basis:
            return MargolisHomology(module, i, (0, -1), {})
        lo, hi = module.min_degree(), module.max_degree()
    else:
        lo, hi = degrees
    top = _certified_top(module, i)
    if top is not None and hi > top:
        raise ValueError(
            f"homology above degree {top} is not certified: the module is "
            f"truncated above {module.truncated_above} and Q_{i} drops degree "
            f"by {module.drop(i)}"
        )
    classes = {}
    for d in range(lo, hi + 1):
        if module.dim(d) == 0:
            continue
        rows = _homology_at(module, i, d)
        if rows.shape[0]:
            classes[d] = rows
    return MargolisHomology(module, i, (lo, hi), classes)


# -- closed forms for H_*BP<2> ----------------------------------------------


def _closed_form_cap(ctx: PrimeContext, i: int):
    """Exponent cap (inclusive, None for unbounded) per xi index for Q_i."""
    p = ctx.p
    if i == 0:
        return lambda a: None if a <= 2 else 0
    if i == 1:
        return lambda a: None if a == 1 else p - 1
    if i == 2:
        return lambda a: p * p - 1
    raise ValueError("closed forms are available for Q_0, Q_1, Q_2 only")


def _xi_monomials(ctx: PrimeContext, degree: int, cap) -> list[Monomial]:
    """All xi-only monomials of the exact degree obeying the exponent caps."""
    found: list[tuple[tuple[int, int], ...]] = []

    def rec(a: int, remaining: int, acc: list[tuple[int, int]]) -> None:
        if remaining == 0:
            found.append(tuple(acc))
            return
        da = ctx.xi_degree(a)
        if da > remaining:
            return
        top = remaining // da
        ca = cap(a)
        if ca is not None:
            top = min(top, ca)
        for e in range(top + 1):
            if e:
                acc.append((a, e))
            rec(a + 1, remaining - e * da, acc)
            if e:
                acc.pop()

    rec(1, degree, [])
    monos = [Monomial.make(xs, ()) for xs in found]
    monos.sort(key=lambda m: sort_key(ctx, m))
    return monos


@dataclass
class MargolisBP2Report:
    prime: int
    q_index: int
    max_degree: int
    passed: bool
    per_degree: dict[int, tuple[int, int]]
    first_failing_degree: int | None
    failures: list[str]

    def classes_at(self, d: int):
        return self.per_degree.get(d, (0, 0))


def margolis_bp2(ctx: PrimeContext, i: int, max_degree: int) -> MargolisBP2Report:
    """Margolis homology of H_*BP<2> against its closed-form monomial basis.

    Q_0 leaves the polynomial algebra on the first two xi's, Q_1 keeps
    xi_1 polynomial and truncates the rest at height p, and Q_2 truncates
    everything at height p^2.  The ambient module is built with one
    Q-drop of headroom so the image at max_degree is fully visible, then
    the computed homology is compared degreewise with the closed form:
    equal dimensions, every closed-form monomial a cycle, and the set
    independent modulo boundaries.
    """
    cap = _closed_form_cap(ctx, i)
    module = bp_homology(ctx, 2, max_degree + ctx.q_degree(i)).module
    hom = margolis_homology(module, i, (0, max_degree))
    p = ctx.p
    per_degree: dict[int, tuple[int, int]] = {}
    failures: list[str] = []
    first_failing: int | None = None

    def fail(d: int, message: str) -> None:
        nonlocal first_failing
        failures.append(message)
        if first_failing is None:
            first_failing = d

    for d in range(max_degree + 1):
        expected = _xi_monomials(ctx, d, cap)
        got = hom.dim(d)
        per_degree[d] = (got, len(expected))
        if got != len(expected):
            fail(d, f"degree {d}: homology dimension {got}, closed form {len(expected)}")
            continue
        if not expected:
            continue
        borders, pivots = _image_rows(module, i, d)
        rows = []
        for mono in expected:
            _, v = module.element(mono)
            if ((module.act(i, d) @ v) % p).any():
                fail(d, f"degree {d}: {format_monomial(mono)} is not a cycle")
            rows.append(reduce_mod_rows(v, borders, pivots, p))
        _, piv = rref_array(np.array(rows), p)
        if len(piv) != len(expected):
            fail(d, f"degree {d}: closed-form classes are dependent modulo boundaries")
    return MargolisBP2Report(
        prime=p,
        q_index=i,
        max_degree=max_degree,
        passed=not failures,
        per_degree=per_degree,
        first_failing_degree=first_failing,
        failures=failures,
    )


# -- Kunneth ------------------------------------------------------------------


@dataclass
class KunnethReport:
    q_index: int
    passed: bool
    per_degree: dict[int, tuple[int, int]]
    first_failing_degree: int | None


def kunneth_check(
    m: QModule, n: QModule, i: int, degrees: tuple[int, int] | None = None
) -> KunnethReport:
    """Compare homology dims of m (x) n with the convolution of factor dims."""
    if m.truncated_above is not None or n.truncated_above is not None:
        raise ValueError("the comparison needs complete finite modules")
    t = tensor(m, n)
    hm = margolis_homology(m, i)
    hn = margolis_homology(n, i)
    ht = margolis_homology(t, i)
    if degrees is None:
        if not t.basis:
            return KunnethReport(i, True, {}, None)
        lo, hi = t.min_degree(), t.max_degree()
    else:
        lo, hi = degrees
    per_degree: dict[int, tuple[int, int]] = {}
    first_failing: int | None = None
    for d in range(lo, hi + 1):
        rhs = sum(hm.dim(a) * hn.dim(d - a) for a in hm.support())
        lhs = ht.dim(d)
        if lhs or rhs:
            per_degree[d] = (lhs, rhs)
        if lhs != rhs and first_failing is None:
            first_failing = d
    return KunnethReport(i, first_failing is None, per_degree, first_failing)


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class InvertibleClass:
    """Parameters of a stably invertible module: suspension a, ideal power b."""

    a: int
    b: int
    margolis_degrees: tuple[int, int]
    pair: tuple[int, int]

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "margolis_degrees": list(self.margolis_degrees)}


@dataclass(frozen=True)
class NotInvertible:
    reason: str


def solve_degree_equations(
    x_degree: int, y_degree: int, d_j: int, d_h: int
) -> tuple[int, int] | None:
    """Solve b(|Q_h| - |Q_j|) = y - x and a = x - b|Q_j|, with |Q_i| = -d_i.

    x is the Q_j-homology degree and y the Q_h-homology degree, j < h.
    Returns None when b is not integral.
    """
    den = d_j - d_h
    num = y_degree - x_degree
    if num % den:
        return None
    b = num // den
    return x_degree + b * d_j, b


def classify_invertible(
    module: QModule, degrees: tuple[int, int] | None = None
) -> InvertibleClass | NotInvertible:
    """Read off (a, b) from one-dimensional Margolis homologies.

    The module must be over exactly two Q operators and complete, so
    both homologies are computed over full support.
    """
    if len(module.qs) != 2:
        raise ValueError("classification needs a module over exactly two Q operators")
    if module.truncated_above is not None:
        raise ValueError("classification needs the complete finite module")
    j, h = module.qs
    hj = margolis_homology(module, j, degrees)
    hh = margolis_homology(module, h, degrees)
    if hj.total_dim != 1 or hh.total_dim != 1:
        return NotInvertible(
            f"Q_{j}-homology has total dimension {hj.total_dim} and "
            f"Q_{h}-homology {hh.total_dim}; both must be 1"
        )
    x_degree = hj.support()[0]
    y_degree = hh.support()[0]
    solved = solve_degree_equations(x_degree, y_degree, module.drop(j), module.drop(h))
    if solved is None:
        return NotInvertible(
            f"homology degree difference {y_degree - x_degree} is not a "
            f"multiple of {module.drop(j) - module.drop(h)}; b is not integral"
        )
    a, b = solved
    return InvertibleClass(a, b, (x_degree, y_degree), (j, h))


def construct_model(ctx: PrimeContext, pair: tuple[int, int], a: int, b: int) -> QModule:
    """The module labeled (a, b) over E(Q_j, Q_h): a suspension of I^{(x)b}.

    I is the augmentation ideal of the free rank-one module.  Negative
    powers use the socle quotient J with a compensating suspension of
    d_j + d_h per factor, so the homologies land at a + |Q_j|b and
    a + |Q_h|b either way.  The shift may be odd; a graded shift of a
    module over the exterior algebra is again a module, and Margolis
    homology only reads degrees.
    """
    j, h = sorted(pair)
    if j == h:
        raise ValueError("the two Q indices must differ")
    qs = (j, h)
    if b == 0:
        return _shift_grading(trivial_module(ctx, qs), a)
    free = free_module(ctx, qs, 0, "g")
    if b > 0:
        factor, _ = submodule_generated(free, [("g", (j,)), ("g", (h,))])
        shift = a
    else:
        factor, _ = quotient(free, [("g", (j, h))])
        shift = a + (-b) * (ctx.q_degree(j) + ctx.q_degree(h))
    out = factor
    for _ in range(abs(b) - 1):
        out = tensor(out, factor)
    return _shift_grading(out, shift)


def freeness_check(module: QModule, degrees: tuple[int, int] | None = None) -> bool:
    """True when every defined Q has vanishing homology in the certified range."""
    if module.total_dim == 0:
        return True
    for i in module.qs:
        if degrees is None:
            lo, hi = module.min_degree(), module.max_degree()
            top = _certified_top(module, i)
            if top is not None:
                hi = min(hi, top)
        else:
            lo, hi = degrees
        if lo > hi:
            continue
        if margolis_homology(module, i, (lo, hi)).total_dim:
            return False
    return True
