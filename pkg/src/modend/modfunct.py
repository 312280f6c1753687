"""Module functors between module categories over one base.

A functor is stored as its on-simples multiplicity table together with one
coherence block per ``(base simple X, source simple i)``.  The block is the
matrix of ``c_{X, m_i}: F(X act m_i) -> X act F(m_i)`` written in the
canonical bases: rows run over ``(k, copy, t)`` as produced by
:func:`modend.blocks.c_rows`, columns over ``(t_src, k, copy)`` as produced by
:func:`modend.blocks.c_cols`.
"""

from __future__ import annotations

from typing import Mapping

from . import blocks
from .blocks import FunctorTables, simple_obj
from .common import SourceTargetMismatch, ValidationReport
from .fusioncat import FusionCategorySpec
from .modcat import ModuleCategorySpec, regular_module
from .scalarfield import Matrix


class ModuleFunctorSpec:
    """A module functor ``(F, c)`` between left modules over the same base."""

    def __init__(self, src: ModuleCategorySpec, dst: ModuleCategorySpec,
                 on_simples: Mapping[tuple, int], c_symbols: Mapping[tuple, Matrix],
                 name: str = ""):
        if src.base is not dst.base:
            raise SourceTargetMismatch("source and target must share the base category")
        if src.orientation != "left" or dst.orientation != "left":
            raise SourceTargetMismatch("module functors are between left modules here")
        self.name = name
        self.src = src
        self.dst = dst
        self.field = src.field
        self.on_simples = {k: int(v) for k, v in on_simples.items() if v}
        self.c_symbols = dict(c_symbols)
        self._tables = None

    def mult(self, i: str, k: str) -> int:
        return self.on_simples.get((i, k), 0)

    @property
    def tables(self) -> FunctorTables:
        if self._tables is None:
            self._tables = FunctorTables(
                src=self.src.tables, dst=self.dst.tables,
                mult=dict(self.on_simples),
                c_block_fn=lambda X, i: self.c_symbols[(X, i)])
        return self._tables

    def image_vector(self, i: str) -> tuple:
        """Multiplicity vector of ``F(m_i)`` over the target simples."""
        return tuple(self.mult(i, k) for k in self.dst.simples)

    def __repr__(self):
        return f"ModuleFunctorSpec({self.name or id(self)})"


def validate_functor(f: ModuleFunctorSpec) -> ValidationReport:
    """Exhaustive coherence check of ``(F, c)``; empty report iff valid."""
    report = ValidationReport(subject=f.name or "module functor")
    base = f.src.base
    ft = f.tables
    for X in base.simples:
        for i in f.src.simples:
            rows = blocks.c_rows(ft, X, i)
            cols = blocks.c_cols(ft, X, i)
            blk = f.c_symbols.get((X, i))
            if blk is None:
                report.add("missing-c-block", (X, i))
                continue
            if blk.rows != len(rows) or blk.cols != len(cols):
                report.add("c-block-shape", (X, i),
                           f"expected {len(rows)}x{len(cols)}, got {blk.rows}x{blk.cols}")
                continue
            if blk.rows != blk.cols:
                report.add("c-block-not-square", (X, i))
            elif blk.rows and blk.rank() < blk.rows:
                report.add("c-block-singular", (X, i))
    if not report.ok:
        return report
    src_t, dst_t = f.src.tables, f.dst.tables
    for i in f.src.simples:
        mi = simple_obj(i)
        lhs = blocks.unit_l(dst_t, blocks.f_obj(ft, mi)) \
            * blocks.c_mor(ft, simple_obj(base.unit), mi)
        rhs = blocks.f_mor(ft, blocks.unit_l(src_t, mi))
        if lhs != rhs:
            report.add("unit-coherence", (i,))
    for X in base.simples:
        for Y in base.simples:
            sx, sy = simple_obj(X), simple_obj(Y)
            for i in f.src.simples:
                mi = simple_obj(i)
                lhs = blocks.whisker_c(dst_t, sx, blocks.c_mor(ft, sy, mi)) \
                    * blocks.c_mor(ft, sx, blocks.act_c(src_t, sy, mi)) \
                    * blocks.f_mor(ft, blocks.assoc(src_t, sx, sy, mi))
                rhs = blocks.assoc(dst_t, sx, sy, blocks.f_obj(ft, mi)) \
                    * blocks.c_mor(ft, blocks.ctensor(base.tables, sx, sy), mi)
                if lhs != rhs:
                    report.add("coherence", (X, Y, i))
    return report


def identity_functor(m: ModuleCategorySpec) -> ModuleFunctorSpec:
    on_simples = {(i, i): 1 for i in m.simples}
    c_symbols = {}
    for X in m.base.simples:
        for i in m.simples:
            n = len(m.act_set(X, i))
            c_symbols[(X, i)] = Matrix.identity(m.field, n)
    return ModuleFunctorSpec(m, m, on_simples, c_symbols, name=f"id_{m.name}")


def act_right_functor(c: FusionCategorySpec, y: str,
                      reg: ModuleCategorySpec | None = None) -> ModuleFunctorSpec:
    """Right multiplication ``- x y`` on the regular module of ``c``."""
    if y not in c.simples:
        raise SourceTargetMismatch(f"{y!r} is not a simple of the base")
    if reg is None:
        reg = regular_module(c)
    tables = reg.tables
    on_simples = {(i, k): 1 for i in c.simples for k in c.fuse(i, y)}
    c_symbols = {}
    for X in c.simples:
        for i in c.simples:
            iso = blocks.assoc(tables, simple_obj(X), simple_obj(i), simple_obj(y))
            c_symbols[(X, i)] = iso.mat
    return ModuleFunctorSpec(reg, reg, on_simples, c_symbols, name=f"rmul_{c.name}_{y}")


def compose_functors(g: ModuleFunctorSpec, f: ModuleFunctorSpec) -> ModuleFunctorSpec:
    """``g after f`` with flattened multiplicity bookkeeping."""
    if f.dst is not g.src:
        raise SourceTargetMismatch("composition needs f.dst == g.src")
    mid = f.dst
    on_simples = {}
    for i in f.src.simples:
        for k2 in g.dst.simples:
            total = sum(f.mult(i, k) * g.mult(k, k2) for k in mid.simples)
            if total:
                on_simples[(i, k2)] = total
    ftab, gtab = f.tables, g.tables

    def copy_order(i: str, k2: str) -> list:
        """Canonical flattening of the copies of ``k2`` in ``G(F(m_i))``."""
        out = []
        for k in mid.simples:
            for alpha in range(f.mult(i, k)):
                for beta in range(g.mult(k, k2)):
                    out.append((k, alpha, beta))
        return out

    c_symbols = {}
    base = f.src.base
    for X in base.simples:
        sx = simple_obj(X)
        for i in f.src.simples:
            mi = simple_obj(i)
            fmi = blocks.f_obj(ftab, mi)
            e = blocks.c_mor(gtab, sx, fmi) \
                * blocks.f_mor(gtab, blocks.c_mor(ftab, sx, mi))
            # reindex the nested bases into the flattened canonical ones
            src_inner = blocks.act_c(f.src.tables, sx, mi)      # X act m_i
            f_of_src = blocks.f_obj(ftab, src_inner)
            nested_src = blocks.f_obj(gtab, f_of_src)           # e.src
            nested_dst = blocks.act_c(g.dst.tables, sx, blocks.f_obj(gtab, fmi))
            # canonical column order: (t_src, k2, copy)
            col_map = []
            for ip, t_src in enumerate(src_inner.labels):
                for k2 in g.dst.simples:
                    for (k, alpha, beta) in copy_order(t_src, k2):
                        apos = f_of_src.index[(ip, k, alpha)]
                        col_map.append(nested_src.index[(apos, k2, beta)])
            # canonical row order: (k2, copy, t)
            gf_mi_keys = []
            for k2 in g.dst.simples:
                for (k, alpha, beta) in copy_order(i, k2):
                    gf_mi_keys.append((k2, k, alpha, beta))
            row_map = []
            gfm = blocks.f_obj(gtab, fmi)
            for (k2, k, alpha, beta) in gf_mi_keys:
                inner_pos = fmi.index[(0, k, alpha)]
                gpos = gfm.index[(inner_pos, k2, beta)]
                for t in g.dst.act_set(X, k2):
                    row_map.append(nested_dst.index[(0, gpos, t)])
            mat = Matrix.zeros(f.field, len(row_map), len(col_map))
            for r, rp in enumerate(row_map):
                for ccol, cp in enumerate(col_map):
                    mat[r, ccol] = e.mat[rp, cp]
            c_symbols[(X, i)] = mat
    return ModuleFunctorSpec(f.src, g.dst, on_simples, c_symbols,
                             name=f"{g.name}*{f.name}")
