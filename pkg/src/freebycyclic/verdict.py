"""Excessive linearity, the unbranched check, the overall verdict and
branching witnesses in the mapping torus."""
from __future__ import annotations

from dataclasses import dataclass, field

from .classify import EXPONENTIAL, classify_strata, ct_normal_form_check
from .core import (EdgePath, GraphMap, TorusElement, free_reduce, inverse_word, lcm,
                   torus_commute)
from .decompose import CENTRAL, DeltaGraph, build_delta, unbranched
from .errors import InternalInconsistencyError, UnsupportedInputError, ValidationError
from .folding import stallings_fold
from .nielsen import (NielsenClass, component_of, is_nielsen_path, nielsen_cycle_classes,
                      vertex_space_generators, vertex_spaces)

GROWTH_WORDS = {0: "finite-order", 1: "linear", 2: "quadratic", 3: "cubic"}


def growth_class(overall) -> str:
    if overall == EXPONENTIAL:
        return "exponential"
    if overall <= 1:
        return GROWTH_WORDS[overall]
    return f"polynomial({overall})"


def growth_phrase(overall) -> str:
    if overall == EXPONENTIAL:
        return "exponential growth"
    if overall == 0:
        return "finite order"
    return GROWTH_WORDS.get(overall, f"degree-{overall} polynomial") + " growth"


@dataclass(frozen=True)
class ExcessiveWitness:
    f: GraphMap
    cls: NielsenClass

    @property
    def axis(self):
        return self.cls.axis

    @property
    def E(self) -> tuple[int, ...]:
        return self.cls.supported_edges

    @property
    def T(self) -> tuple[int, ...]:
        return self.cls.high_rank_vertices

    @property
    def count(self) -> int:
        return self.cls.count

    def to_json(self) -> dict:
        g = self.f.graph
        return {
            "axis": g.format_word(self.axis.representative),
            "E": [g.edges[e] for e in self.E],
            "T": [g.vertices[v] for v in self.T],
        }


def _is_excessive(cls: NielsenClass) -> bool:
    return len(cls.records) >= 2 and cls.count >= 3


def excessive_linearity(f: GraphMap, all: bool = False):
    """First class (by canonical axis) with |E(u)| >= 2 and |E(u)|+|T(u)| >= 3.

    With ``all=True`` returns the list of every such class.
    """
    found = [ExcessiveWitness(f, c) for c in nielsen_cycle_classes(f) if _is_excessive(c)]
    if all:
        return found
    return found[0] if found else None


def literal_count_caveats(f: GraphMap) -> list[str]:
    g = f.graph
    out = []
    for c in nielsen_cycle_classes(f):
        if len(c.records) == 1 and c.count >= 3:
            out.append(f"axis {g.format_word(c.axis.representative)} has one linear edge but "
                       f"passes {len(c.high_rank_vertices)} high-rank vertices; the Delta "
                       f"valence is 2, so it is not counted as excessive")
    return out


def restrict_linear(f: GraphMap) -> list[tuple[tuple[int, ...], GraphMap]]:
    """Components (with a cycle) of the invariant subgraph of edges of degree <= 1.

    Returns pairs (edge ids in the original graph, restricted map).
    """
    g = f.graph
    growth = classify_strata(f)
    keep = [e for e, d in enumerate(growth.degrees) if d != EXPONENTIAL and d <= 1]
    parent = {v: v for e in keep for v in (g.src[e], g.dst[e])}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in keep:
        a, b = find(g.src[e]), find(g.dst[e])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for e in keep:
        groups.setdefault(find(g.src[e]), []).append(e)
    out = []
    for root in sorted(groups, key=lambda r: groups[r][0]):
        es = groups[root]
        nverts = len({v for e in es for v in (g.src[e], g.dst[e])})
        if len(es) - nverts + 1 < 1:
            continue
        sub, _, _ = f.restrict(es)
        out.append((tuple(es), sub))
    return out


@dataclass(frozen=True)
class Block:
    source: str  # linear edge name or CENTRAL
    free_part: tuple[TorusElement, ...]
    center: TorusElement
    center_exponent: int  # s with center = (u^s, t)

    def contains(self, x: TorusElement, f: GraphMap) -> bool:
        """x = y·center^k with y in the free part?"""
        k = x.t_exp
        c = self.center.word  # fixed by f, so center^k = (c^k, k)
        ck = free_reduce(c * k if k >= 0 else inverse_word(c) * -k)
        rest = free_reduce(x.word + inverse_word(ck))
        folded = stallings_fold([y.word for y in self.free_part], f.graph, x.base)
        return folded.contains(rest)


@dataclass(frozen=True)
class BranchingWitness:
    f: GraphMap
    basepoint: int
    axis_word: tuple[int, ...]
    base_quasiflat: tuple[TorusElement, TorusElement]
    blocks: tuple[Block, ...]
    quasilines: tuple[TorusElement, ...]
    triple_intersection: tuple[TorusElement, TorusElement]

    def to_json(self) -> dict:
        g = self.f.graph
        return {
            "basepoint": g.vertices[self.basepoint],
            "axis": g.format_word(self.axis_word),
            "base_quasiflat": [x.to_json(g) for x in self.base_quasiflat],
            "blocks": [{"source": b.source,
                        "free_part": [x.to_json(g) for x in b.free_part],
                        "center": b.center.to_json(g)} for b in self.blocks],
            "quasilines": [x.to_json(g) for x in self.quasilines],
            "triple_intersection": [x.to_json(g) for x in self.triple_intersection],
        }


def _rotation_conjugator(u: tuple[int, ...], w: tuple[int, ...]):
    """gamma and sign with gamma·w·gamma^-1 = u^sign, gamma a prefix of u."""
    n = len(u)
    if len(w) == n:
        for sign, x in ((1, w), (-1, inverse_word(w))):
            for i in range(n):
                if u[i:] + u[:i] == x:
                    return u[:i], sign
    raise InternalInconsistencyError("root is not a rotation of the axis",
                                     {"axis": u, "root": w})


def branching_witness(f: GraphMap, witness: ExcessiveWitness | None) -> BranchingWitness:
    """Three blocks F_i x <c_i> meeting in <u, t>, plus 2-RBF quasiline data.

    Basepoint x0 is the start of the axis word u (the root of the first edge
    of the class). For a linear edge E with f(E) = E·w^n and w = gamma^-1 u^s
    gamma, its block is gamma·~E·pi_1(X_init(E))·E·gamma^-1 x <u^(s n) t>; the
    central block is pi_1(X_central, x0) x <t>.
    """
    if witness is None:
        raise ValueError("no excessive linearity: the mapping torus is unbranched")
    g = f.graph
    cls = witness.cls
    u = cls.axis.representative
    x0 = g.init(u[0])
    central = vertex_spaces(f)[cls.central_component]

    def el(word, k=0):
        return TorusElement(free_reduce(word), k, x0)

    blocks: list[Block] = []
    for rec in cls.records:
        space = component_of(f, g.init(rec.dart))
        if space.rank < 2:
            continue
        gamma, sign = _rotation_conjugator(u, rec.root)
        if gamma and not is_nielsen_path(f, EdgePath(gamma, x0)):
            raise UnsupportedInputError(
                f"root of {g.edges[rec.edge]} is a rotation of the axis by a non-Nielsen path")
        s = sign * rec.power
        gens = [el(u)]
        for y in vertex_space_generators(f, space, g.init(rec.dart)):
            word = free_reduce(gamma + (rec.dart ^ 1,) + y + (rec.dart,) + inverse_word(gamma))
            if word and all(word != x.word for x in gens):
                gens.append(el(word))
        center = el(u * s if s > 0 else inverse_word(u) * -s, 1)
        blocks.append(Block(g.edges[rec.edge], tuple(gens), center, s))
    if central.rank > 1:
        if x0 not in central.vertices:
            raise UnsupportedInputError("axis basepoint lies outside the central vertex space")
        gens = [el(u)]
        for y in vertex_space_generators(f, central, x0):
            if y and all(y != x.word for x in gens):
                gens.append(el(y))
        blocks.append(Block(CENTRAL, tuple(gens), el((), 1), 0))
    if len(blocks) < 3:
        raise InternalInconsistencyError(
            "excessive linearity witnessed but fewer than three blocks",
            {"axis": g.format_word(u), "blocks": [b.source for b in blocks]})
    blocks = blocks[:3]
    big = lcm(b.center_exponent for b in blocks)
    pair = (el(u), el(u * big, 1))
    result = BranchingWitness(f, x0, u, (el(u), el((), 1)), tuple(blocks),
                              tuple(b.center for b in blocks), pair)
    check_witness(result)
    return result


def _axis_coords(x: TorusElement, u: tuple[int, ...]):
    """(e, k) with x = u^e t^k, or None if x is not in <u, t>."""
    n = len(x.word)
    if n % len(u):
        return None
    e = n // len(u)
    if x.word == u * e:
        return e, x.t_exp
    if x.word == inverse_word(u) * e:
        return -e, x.t_exp
    return None


def check_witness(w: BranchingWitness) -> None:
    """Raise InternalInconsistencyError unless every claimed relation holds."""
    f = w.f
    problems = []
    for b in w.blocks:
        for x in b.free_part:
            if not torus_commute(b.center, x, f):
                problems.append(f"block {b.source}: center does not commute with a generator")
    exps = [b.center_exponent for b in w.blocks]
    if len(set(exps)) != len(exps):
        problems.append("block centers are commensurable")
    p, q = w.triple_intersection
    if not torus_commute(p, q, f):
        problems.append("triple-intersection pair does not commute")
    cp, cq = _axis_coords(p, w.axis_word), _axis_coords(q, w.axis_word)
    if cp is None or cq is None or cp[0] * cq[1] - cp[1] * cq[0] == 0:
        problems.append("triple-intersection pair is not an independent pair in <u, t>")
    for b in w.blocks:
        for x in (p, q):
            if not b.contains(x, f):
                problems.append(f"block {b.source} misses a triple-intersection generator")
    a, t = w.base_quasiflat
    if not torus_commute(a, t, f):
        problems.append("base quasiflat generators do not commute")
    if problems:
        raise InternalInconsistencyError("branching witness failed its checks",
                                         {"problems": problems})


@dataclass
class ComponentResult:
    edges: tuple[int, ...]
    f: GraphMap
    witnesses: list
    delta: DeltaGraph
    unbranched: bool


@dataclass
class Verdict:
    f: GraphMap
    growth: str
    degree: int | str
    rank: int
    excessive: ExcessiveWitness | None
    unbranched: bool
    caveats: list[str] = field(default_factory=list)
    witness: BranchingWitness | None = None
    components: list[ComponentResult] = field(default_factory=list)
    all_witnesses: list[ExcessiveWitness] = field(default_factory=list)

    @property
    def hhg(self) -> bool:
        return self.unbranched

    coarse_median = quasicubical = no_2rbf = hhg

    def summary(self) -> str:
        return f"HHG: {'yes' if self.hhg else 'no'} ({growth_phrase(self.degree)})"

    def key(self) -> tuple:
        """The part of the verdict that is independent of presentation."""
        return (self.growth, self.rank, self.hhg, self.excessive is not None)

    def to_json(self, all_witnesses: bool = False) -> dict:
        out = {
            "growth": self.growth,
            "rank": self.rank,
            "excessive": self.excessive.to_json() if self.excessive else None,
            "unbranched": self.unbranched,
            "hhg": self.hhg,
            "coarse_median": self.coarse_median,
            "quasicubical": self.quasicubical,
            "no_2rbf": self.no_2rbf,
            "caveats": list(self.caveats),
            "witness": self.witness.to_json() if self.witness else None,
        }
        if all_witnesses:
            out["all_excessive"] = [w.to_json() for w in self.all_witnesses]
        return out


def validate(f: GraphMap):
    report = ct_normal_form_check(f)
    if not report.ok:
        raise ValidationError("input is not in the supported normal form",
                              [str(d) for d in report.violations])
    return report


def decide(f: GraphMap, rank_shortcut: bool = True) -> Verdict:
    report = validate(f)
    growth = report.growth
    rank = f.graph.rank
    caveats = []
    if growth.eg_strata:
        caveats.append("EG strata present: verdict conditional on input being a CT "
                       "representative")
    verdict = Verdict(f, growth_class(growth.overall), growth.overall, rank, None, True,
                      caveats)
    if growth.overall == 0:
        return verdict
    if rank <= 2 and rank_shortcut:
        return verdict
    for edges, sub in restrict_linear(f):
        found = excessive_linearity(sub, all=True)
        delta = build_delta(sub)
        ok = unbranched(delta)
        if ok != (not found):
            raise InternalInconsistencyError(
                "excessive linearity and the Delta valence check disagree",
                {"component": [f.graph.edges[e] for e in edges],
                 "excessive": [w.to_json() for w in found],
                 "black_valences": {b.id: delta.valence(b.id) for b in delta.blacks}})
        verdict.components.append(ComponentResult(edges, sub, found, delta, ok))
        verdict.caveats.extend(literal_count_caveats(sub))
        verdict.all_witnesses.extend(found)
    if verdict.all_witnesses:
        verdict.excessive = verdict.all_witnesses[0]
        verdict.unbranched = False
        verdict.witness = branching_witness(verdict.excessive.f, verdict.excessive)
    return verdict
