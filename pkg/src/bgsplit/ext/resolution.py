"""Minimal free resolutions over exterior algebras and Ext(M, N).

A stage holds a free module on the minimal generators of the previous
kernel.  Since Q lowers degree, generators sit at the top of their
orbits and each stage's top generator degree drops by at least one, so a
degree floor bounds the number of stages that can touch a fixed internal
degree window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..fplin import coset_representatives, kernel_array, rref_array
from ..qmodules import QModule, QModuleMap, direct_sum, free_module
from .koszul import BigradedDims


def _q_set_matrix(module: QModule, start_degree: int, subset: tuple[int, ...]) -> np.ndarray:
    """Matrix of the composite Q_{i_1}...Q_{i_m}, applied largest index first."""
    p = module.ctx.p
    mat = np.eye(module.dim(start_degree), dtype=np.int64)
    degree = start_degree
    for i in sorted(subset, reverse=True):
        mat = module.act(i, degree) @ mat % p
        degree -= module.drop(i)
    return mat


def _minimal_generators(module: QModule) -> dict[int, np.ndarray]:
    """Rows spanning M / (sum_i Q_i M) per degree, canonical representatives."""
    p = module.ctx.p
    gens: dict[int, np.ndarray] = {}
    for d in module.degrees():
        above = [module.act(i, d + module.drop(i)) for i in module.qs]
        span = np.concatenate([a.T for a in above], axis=0) if above else np.zeros((0, module.dim(d)), dtype=np.int64)
        reps = coset_representatives(np.eye(module.dim(d), dtype=np.int64), span, p)
        if reps.shape[0]:
            gens[d] = reps
    return gens


@dataclass
class ResolutionStage:
    """Free module F_s with its generator data and the map to the target below."""

    free: QModule
    gen_degrees: list[int]
    gen_vectors: list[tuple[int, np.ndarray]]
    map_down: QModuleMap


def _build_stage(
    target: QModule, gens: dict[int, np.ndarray], label: tuple
) -> ResolutionStage:
    """Free module on the given generators with its equivariant cover of target."""
    ctx, qs, p = target.ctx, target.qs, target.ctx.p
    degrees: list[int] = []
    vectors: list[tuple[int, np.ndarray]] = []
    for d in sorted(gens, reverse=True):
        for row in gens[d]:
            degrees.append(d)
            vectors.append((d, row))
    blocks = [
        free_module(ctx, qs, d, (*label, j)) for j, d in enumerate(degrees)
    ]
    free = direct_sum(blocks) if blocks else QModule(ctx, qs, {}, {})
    mats: dict[int, np.ndarray] = {}
    for d in free.degrees():
        cols = []
        for block, (_, subset) in free.basis[d]:
            gen_degree, vec = vectors[block]
            cols.append(_q_set_matrix(target, gen_degree, subset) @ vec % p)
        mats[d] = np.stack(cols, axis=1) if cols else np.zeros((target.dim(d), 0), dtype=np.int64)
    return ResolutionStage(free, degrees, vectors, QModuleMap(free, target, mats))


def _kernel_generators(stage: ResolutionStage) -> dict[int, np.ndarray]:
    """Minimal generators of ker(map_down), canonical representatives.

    The kernel is closed under every Q_i, so at each degree the part
    generated from above is exactly the one-step span sum_i Q_i K_{d+d_i};
    minimal generators are coset representatives of the kernel modulo it,
    taken in descending degree order.
    """
    free = stage.free
    p = free.ctx.p
    kernels = {
        d: kernel_array(stage.map_down.mat(d), p) for d in free.degrees()
    }
    gens: dict[int, np.ndarray] = {}
    for d in sorted(kernels, reverse=True):
        k = kernels[d]
        if k.shape[0] == 0:
            continue
        spans = []
        for i in free.qs:
            upper = kernels.get(d + free.drop(i))
            if upper is not None and upper.shape[0]:
                spans.append((free.act(i, d + free.drop(i)) @ upper.T).T % p)
        span = np.concatenate(spans, axis=0) if spans else np.zeros((0, free.dim(d)), dtype=np.int64)
        reps = coset_representatives(k, span, p)
        if reps.shape[0]:
            gens[d] = reps
    return gens


def _assert_radical(stage: ResolutionStage, gens: dict[int, np.ndarray]) -> None:
    """Generators of the kernel may not touch a (gen, empty-set) coordinate."""
    free = stage.free
    for d, rows in gens.items():
        for col, (_, (_, subset)) in enumerate(free.basis[d]):
            if not subset and rows[:, col].any():
                raise AssertionError("kernel escapes the radical; the cover was not minimal")


def minimal_resolution(
    module: QModule,
    s_max: int | None = None,
    degree_floor: int | None = None,
) -> list[ResolutionStage]:
    """Stages F_0, F_1, ... of the minimal free resolution of module.

    Stops after s_max stages, when the kernel vanishes, or when every
    generator of the next stage sits below degree_floor (its free orbit
    can never reach back above the floor).  At least one bound must be
    given; the module must be complete.
    """
    if module.truncated_above is not None:
        raise ValueError("resolutions need the complete finite module")
    if s_max is None and degree_floor is None:
        raise ValueError("either s_max or degree_floor must bound the resolution")
    stages: list[ResolutionStage] = []
    target = module
    gens = _minimal_generators(module)
    s = 0
    while True:
        if s_max is not None and s > s_max:
            break
        if not gens:
            break
        if degree_floor is not None and max(gens) < degree_floor:
            break
        stage = _build_stage(target, gens, ("g", s))
        stages.append(stage)
        gens = _kernel_generators(stage)
        _assert_radical(stage, gens)
        target = stage.free
        s += 1
    return stages


# -- Ext(M, N) -----------------------------------------------------------------


def _hom_blocks(stage: ResolutionStage, n: QModule, t: int) -> list[tuple[int, int]]:
    """(gen index, N-dimension at t + gen degree) per generator."""
    return [(j, n.dim(t + d)) for j, d in enumerate(stage.gen_degrees)]


def _hom_differential(
    upper: ResolutionStage, lower: ResolutionStage, n: QModule, t: int
) -> np.ndarray:
    """Matrix of precomposition Hom(F_s, N)^t -> Hom(F_{s+1}, N)^t.

    upper is the stage for F_{s+1} (whose generator vectors live in F_s),
    lower the stage for F_s.
    """
    p = n.ctx.p
    src = _hom_blocks(lower, n, t)
    dst = _hom_blocks(upper, n, t)
    src_off = np.cumsum([0] + [dim for _, dim in src])
    dst_off = np.cumsum([0] + [dim for _, dim in dst])
    mat = np.zeros((int(dst_off[-1]), int(src_off[-1])), dtype=np.int64)
    free = lower.free
    for g_new, (gen_degree, vec) in enumerate(upper.gen_vectors):
        if dst[g_new][1] == 0:
            continue
        for col, coeff in enumerate(vec):
            if coeff == 0:
                continue
            block, (_, subset) = free.basis[gen_degree][col]
            if src[block][1] == 0:
                continue
            source_degree = t + lower.gen_degrees[block]
            piece = _q_set_matrix(n, source_degree, subset)
            r0, c0 = int(dst_off[g_new]), int(src_off[block])
            mat[r0 : r0 + piece.shape[0], c0 : c0 + piece.shape[1]] += int(coeff) * piece
    return mat % p


def ext_general(
    m: QModule,
    n: QModule,
    s_max: int,
    t_max: int,
    t_min: int | None = None,
) -> BigradedDims:
    """Ext^{s,t}(M, N) over the common exterior algebra, t = deg n - deg g.

    M must be complete; if N is truncated the certified window shrinks to
    t <= truncation - (largest generator degree), recorded in the note.
    """
    if m.qs != n.qs:
        raise ValueError("both modules must be over the same operators")
    stages = minimal_resolution(m, s_max=s_max + 1)
    p = m.ctx.p
    note = None
    if not stages:
        lo = 0 if t_min is None else t_min
        return BigradedDims({}, s_max, t_max, lo, note="source module is zero")
    all_gen_degrees = [d for st in stages for d in st.gen_degrees]
    top_gen = max(all_gen_degrees)
    low_gen = min(all_gen_degrees)
    if n.truncated_above is not None:
        certified = n.truncated_above - top_gen
        if t_max > certified:
            note = f"t_max shrunk to certified {certified}"
            t_max = certified
    lo = (n.min_degree() - top_gen) if t_min is None else t_min
    hi_needed = n.max_degree() - low_gen if n.basis else lo - 1
    dims: dict[tuple[int, int], int] = {}
    for t in range(lo, min(t_max, hi_needed) + 1):
        prev_rank = 0
        for s in range(s_max + 1):
            if s >= len(stages):
                break
            dim_here = sum(dim for _, dim in _hom_blocks(stages[s], n, t))
            if s + 1 < len(stages):
                delta = _hom_differential(stages[s + 1], stages[s], n, t)
                _, piv = rref_array(delta, p)
                rank = len(piv)
            else:
                rank = 0
            d = dim_here - rank - prev_rank
            if d:
                dims[(s, t)] = d
            prev_rank = rank
    return BigradedDims(dims, s_max, t_max, lo, note=note)
