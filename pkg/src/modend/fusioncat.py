"""Skeletal multiplicity-free fusion categories: data, validation, duality.

A category is specified by its simple labels, unit, dual involution, fusion
table ``N_{ab}^c in {0,1}`` and sparse F-symbols.  ``F[a,b,c; d; e,f]`` is the
coefficient, in the associator ``(a x b) x c -> a x (b x c)`` evaluated at
total object ``d``, between the source path through ``e in a x b`` and the
target path through ``f in b x c``.  Admissible F-entries default to 1, unit
legs must stay at 1, and the pentagon is checked exhaustively and exactly.

Duality scalars are normalized by ``coev = 1`` (both chiralities); evaluation
scalars are then forced by the zig-zag identities, e.g. the right evaluation
at ``a`` is the inverse of ``F[a, a*, a; a; 1, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import blocks
from .blocks import BaseTables, Mor, simple_obj
from .common import InconsistentRigidity, UnknownLabel, ValidationReport
from .scalarfield import DimensionMismatch, FieldSpec, FieldElement


class FusionCategorySpec:
    """Immutable skeletal data of a multiplicity-free fusion category."""

    def __init__(self, field: FieldSpec, simples: Sequence[str], unit: str,
                 dual: Mapping[str, str], fusion: Iterable[tuple],
                 f_symbols: Mapping[tuple, FieldElement] | None = None,
                 name: str = ""):
        self.name = name
        self.field = field
        self.simples = tuple(simples)
        if len(set(self.simples)) != len(self.simples):
            raise ValueError("duplicate simple labels")
        self.unit = unit
        self.dual = dict(dual)
        self.fusion = frozenset(tuple(t) for t in fusion)
        for triple in self.fusion:
            for lab in triple:
                if lab not in self.simples:
                    raise UnknownLabel(lab)
        fuse_map = {}
        for a in self.simples:
            for b in self.simples:
                fuse_map[(a, b)] = tuple(c for c in self.simples if (a, b, c) in self.fusion)
        self._fuse_map = fuse_map
        self.f_raw = dict(f_symbols or {})
        self._f = {}
        for key in self._admissible_f_keys():
            self._f[key] = self.f_raw.get(key, field.one)
        self._tables = None
        self._duality = None

    def _admissible_f_keys(self):
        for a in self.simples:
            for b in self.simples:
                for c in self.simples:
                    for e in self._fuse_map[(a, b)]:
                        for d in self._fuse_map[(e, c)]:
                            for f in self._fuse_map[(b, c)]:
                                if d in self._fuse_map[(a, f)]:
                                    yield (a, b, c, d, e, f)

    def fuse(self, a: str, b: str) -> tuple:
        if a not in self.simples or b not in self.simples:
            raise UnknownLabel(f"{a!r} or {b!r}")
        return self._fuse_map[(a, b)]

    def f_symbol(self, a, b, c, d, e, f) -> FieldElement:
        return self._f.get((a, b, c, d, e, f), self.field.zero)

    @property
    def tables(self) -> BaseTables:
        if self._tables is None:
            self._tables = BaseTables(
                field=self.field, simples=self.simples, unit=self.unit,
                dual=self.dual, fuse_map=self._fuse_map,
                f_entry=lambda a, b, c, d, e, f: self._f.get((a, b, c, d, e, f), self.field.zero),
            )
        return self._tables

    def duality(self) -> "DualityData":
        if self._duality is None:
            self._duality = compute_duality(self)
        return self._duality

    def __repr__(self):
        return f"FusionCategorySpec({self.name or ','.join(self.simples)})"


@dataclass
class DualityData:
    """Zig-zag-normalized duality scalars for each simple."""

    ev_scalar: dict
    coev_scalar: dict
    left_ev_scalar: dict
    left_coev_scalar: dict


def validate_fusion(spec: FusionCategorySpec) -> ValidationReport:
    """Exhaustive structural and pentagon validation; violations as entries."""
    report = ValidationReport(subject=spec.name or "fusion category")
    simples = spec.simples
    if spec.unit not in simples:
        report.add("unknown-unit", (spec.unit,))
        return report
    for a in simples:
        if spec.dual.get(a) not in simples:
            report.add("dual-not-a-simple", (a,))
            return report
    for a in simples:
        if spec.dual[spec.dual[a]] != a:
            report.add("dual-not-involutive", (a,))
    for a in simples:
        if spec._fuse_map[(spec.unit, a)] != (a,):
            report.add("unit-fusion", (spec.unit, a), "left unit constraint violated")
        if spec._fuse_map[(a, spec.unit)] != (a,):
            report.add("unit-fusion", (a, spec.unit), "right unit constraint violated")
    for a in simples:
        for b in simples:
            has_unit = spec.unit in spec._fuse_map[(a, b)]
            if has_unit != (b == spec.dual[a]):
                report.add("rigidity-labels", (a, b),
                           "N_{ab}^1 = 1 must hold exactly when b = a*")
            for c in spec._fuse_map[(a, b)]:
                if spec.dual[c] not in spec._fuse_map[(spec.dual[b], spec.dual[a])]:
                    report.add("dual-symmetry", (a, b, c),
                               "N_{ab}^c must equal N_{b*a*}^{c*}")
    # associativity of the fusion table itself
    for a in simples:
        for b in simples:
            for c in simples:
                for d in simples:
                    left = sum(1 for e in spec._fuse_map[(a, b)] if d in spec._fuse_map[(e, c)])
                    right = sum(1 for f in spec._fuse_map[(b, c)] if d in spec._fuse_map[(a, f)])
                    if left != right:
                        report.add("fusion-associativity", (a, b, c, d),
                                   f"path counts {left} != {right}")
    if not report.ok:
        return report
    # F-symbols: inadmissible entries, unit legs, invertibility
    admissible = set(spec._f)
    for key in spec.f_raw:
        if key not in admissible:
            report.add("inadmissible-f-entry", key)
    for key, val in spec._f.items():
        a, b, c, d, e, f = key
        if spec.unit in (a, b, c) and val != spec.field.one:
            report.add("unit-leg-f", key, "unit-leg F-symbols must be 1")
    tables = spec.tables
    for a in simples:
        for b in simples:
            for c in simples:
                totals = set()
                for e in spec._fuse_map[(a, b)]:
                    totals.update(spec._fuse_map[(e, c)])
                for t in totals:
                    f_list, e_list, mat = tables.f_block(a, b, c, t)
                    if len(f_list) != len(e_list):
                        report.add("f-block-not-square", (a, b, c, t))
                        continue
                    try:
                        mat.inverse()
                    except ArithmeticError:
                        report.add("f-block-singular", (a, b, c, t))
    if not report.ok:
        return report
    # pentagon, via the regular module
    reg = tables.regular()
    for a in simples:
        for b in simples:
            for c in simples:
                for m in simples:
                    defect = blocks.left_pentagon_defect(reg, a, b, c, m)
                    if not defect.is_zero():
                        report.add("pentagon", (a, b, c, m))
    return report


def _solve_zigzag_scalars(spec: FusionCategorySpec, left: bool) -> dict:
    """Solve the first zig-zag for the evaluation scalars with coev = 1."""
    base = spec.tables
    reg = base.regular()
    one_obj = simple_obj(spec.unit)
    out = {}
    for a in spec.simples:
        sa = simple_obj(a)
        da = blocks.rdual_flat(base, sa)
        # with placeholder ev = 1: composite equals s * id, set ev = 1/s
        base_ev = base.lev if left else base.ev
        base_ev[a] = spec.field.one
        if left:
            zig = blocks.runit_reg(base, sa) \
                * blocks.zeta_flat(reg, sa, blocks.act_c(reg, sa, one_obj)) \
                * blocks.whisker_c(reg, sa, blocks.lcoev_insert(reg, sa, one_obj)) \
                * blocks.runit_reg_inv(base, sa)
        else:
            zig = blocks.runit_reg(base, sa) \
                * blocks.whisker_c(reg, sa, blocks.eps_flat(reg, sa, one_obj)) \
                * blocks.whisker_c(reg, sa, blocks.whisker_c(reg, da, blocks.runit_reg_inv(base, sa))) \
                * blocks.coev_insert(reg, sa, sa)
        scalar = zig.mat[0, 0]
        if not scalar:
            raise InconsistentRigidity(f"degenerate zig-zag at {a}")
        out[a] = scalar.inverse()
        base_ev[a] = out[a]
    return out


def compute_duality(spec: FusionCategorySpec) -> DualityData:
    """Fix coev scalars to 1, solve ev scalars, verify both zig-zags."""
    base = spec.tables
    reg = base.regular()
    one = spec.field.one
    for a in spec.simples:
        base.coev[a] = one
        base.lcoev[a] = one
    ev = _solve_zigzag_scalars(spec, left=False)
    lev = _solve_zigzag_scalars(spec, left=True)
    one_obj = simple_obj(spec.unit)
    for a in spec.simples:
        sa = simple_obj(a)
        da = blocks.rdual_flat(base, sa)
        ident_a = Mor.identity(spec.field, sa)
        ident_d = Mor.identity(spec.field, da)
        zig1 = blocks.runit_reg(base, sa) \
            * blocks.whisker_c(reg, sa, blocks.eps_flat(reg, sa, one_obj)) \
            * blocks.whisker_c(reg, sa, blocks.whisker_c(reg, da, blocks.runit_reg_inv(base, sa))) \
            * blocks.coev_insert(reg, sa, sa)
        zig2 = blocks.runit_reg(base, da) \
            * blocks.eps_flat(reg, sa, blocks.act_c(reg, da, one_obj)) \
            * blocks.whisker_c(reg, da, blocks.coev_insert(reg, sa, one_obj)) \
            * blocks.runit_reg_inv(base, da)
        if zig1 != ident_a or zig2 != ident_d:
            raise InconsistentRigidity(f"right zig-zags disagree at {a}")
        lzig1 = blocks.runit_reg(base, sa) \
            * blocks.zeta_flat(reg, sa, blocks.act_c(reg, sa, one_obj)) \
            * blocks.whisker_c(reg, sa, blocks.lcoev_insert(reg, sa, one_obj)) \
            * blocks.runit_reg_inv(base, sa)
        lzig2 = blocks.runit_reg(base, da) \
            * blocks.whisker_c(reg, da, blocks.zeta_flat(reg, sa, one_obj)
                               * blocks.whisker_c(reg, sa, blocks.runit_reg_inv(base, da))) \
            * blocks.lcoev_insert(reg, sa, da)
        if lzig1 != ident_a or lzig2 != ident_d:
            raise InconsistentRigidity(f"left zig-zags disagree at {a}")
    return DualityData(
        ev_scalar=dict(ev), coev_scalar={a: one for a in spec.simples},
        left_ev_scalar=dict(lev), left_coev_scalar={a: one for a in spec.simples},
    )


def tensor_decompose(spec: FusionCategorySpec, a: str, b: str) -> tuple:
    """Simple summands of ``a x b``."""
    return spec.fuse(a, b)


def hom_dim(spec: FusionCategorySpec, x: Sequence[int], y: Sequence[int]) -> int:
    """Hom dimension between multiplicity vectors over the simples."""
    if len(x) != len(spec.simples) or len(y) != len(spec.simples):
        raise DimensionMismatch("multiplicity vectors must run over the simples")
    return sum(xi * yi for xi, yi in zip(x, y))
