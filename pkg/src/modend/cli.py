"""Instance loading, command dispatch and machine-readable reports.

Instance files are JSON documents with three optional maps, ``categories``,
``modules`` and ``functors``; cross-references are by name and may span
files.  Scalars are exact: rationals are written ``"p/q"`` (or plain
integers), field elements as constant-first coefficient arrays over the
category's number field.  The full schema is documented in docs/format.md.

Exit codes: 0 success, 1 parse/validation failure, 2 theorem-certificate
failure.  The ``suite`` command treats every check (including validation and
exactness of the structure constants) as a certificate and exits 2 on any
failure, so perturbing a single bundled scalar flips its exit code.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from importlib import resources

from . import endengine, theorems
from .common import (NotATensorSubcategory, OracleMismatch, ParseError,
                     SerreCertificateFailure, UnknownCommand, UnknownName,
                     UpsilonMismatch, ValidationError)
from .fusioncat import FusionCategorySpec, validate_fusion
from .modcat import (ModuleCategorySpec, internal_hom, regular_module,
                     restrict_module, validate_module)
from .modfunct import (ModuleFunctorSpec, act_right_functor, identity_functor,
                       validate_functor)
from .scalarfield import FieldElement, FieldSpec, Matrix, as_fraction


def _fmt_rational(q: Fraction) -> str:
    return str(q)


def _fmt_element(e: FieldElement):
    if e.field.degree == 1 or not any(e.coeffs[1:]):
        return _fmt_rational(e.coeffs[0])
    return [_fmt_rational(c) for c in e.coeffs]


def _parse_element(field: FieldSpec, value) -> FieldElement:
    if isinstance(value, (int, str)):
        return field.rational(as_fraction(value))
    if isinstance(value, list):
        return field.element(value)
    raise ParseError(f"not a field element: {value!r}")


class InstanceBundle:
    """Named categories, modules and functors with resolved references."""

    def __init__(self):
        self.categories = {}
        self.modules = {}
        self.functors = {}
        self.digests = {}

    def category(self, name: str) -> FusionCategorySpec:
        if name not in self.categories:
            raise UnknownName(f"category {name!r}")
        return self.categories[name]

    def module(self, name: str) -> ModuleCategorySpec:
        if name not in self.modules:
            raise UnknownName(f"module {name!r}")
        return self.modules[name]

    def functor(self, name: str) -> ModuleFunctorSpec:
        if name not in self.functors:
            raise UnknownName(f"functor {name!r}")
        return self.functors[name]

    def validate_all(self) -> list:
        """All validation reports plus duality construction, in bundle order."""
        reports = []
        for name, cat in self.categories.items():
            rep = validate_fusion(cat)
            rep.subject = f"category {name}"
            reports.append(rep)
            if rep.ok:
                try:
                    cat.duality()
                except ArithmeticError as exc:
                    rep.add("duality", (name,), str(exc))
        for name, mod in self.modules.items():
            rep = validate_module(mod)
            rep.subject = f"module {name}"
            reports.append(rep)
        for name, fun in self.functors.items():
            rep = validate_functor(fun)
            rep.subject = f"functor {name}"
            reports.append(rep)
        return reports


def _load_category(name: str, data: dict) -> FusionCategorySpec:
    field = FieldSpec(data["field"]["min_poly"])
    f_symbols = {}
    for entry in data.get("f_symbols", []):
        key = tuple(entry["key"])
        f_symbols[key] = _parse_element(field, entry["value"])
    return FusionCategorySpec(
        field=field, simples=data["simples"], unit=data["unit"],
        dual=data["dual"], fusion=[tuple(t) for t in data["fusion"]],
        f_symbols=f_symbols, name=name)


def _load_module(name: str, data: dict, bundle: InstanceBundle) -> ModuleCategorySpec:
    kind = data.get("type", "explicit")
    base = bundle.category(data["category"])
    if kind == "regular":
        mod = regular_module(base)
        mod.name = name
        return mod
    if kind != "explicit":
        raise ParseError(f"unknown module type {kind!r}")
    l_symbols = {}
    for entry in data.get("l_symbols", []):
        l_symbols[tuple(entry["key"])] = _parse_element(base.field, entry["value"])
    units = {i: _parse_element(base.field, v)
             for i, v in data.get("unit_scalars", {}).items()}
    return ModuleCategorySpec(
        base=base, simples=data["simples"],
        action=[tuple(t) for t in data["action"]], l_symbols=l_symbols,
        unit_scalars=units, orientation=data.get("orientation", "left"), name=name)


def _load_functor(name: str, data: dict, bundle: InstanceBundle) -> ModuleFunctorSpec:
    kind = data.get("type", "explicit")
    if kind == "identity":
        fun = identity_functor(bundle.module(data["module"]))
        fun.name = name
        return fun
    if kind == "act_right":
        cat = bundle.category(data["category"])
        reg = bundle.module(f"{data['category']}_regular")
        fun = act_right_functor(cat, data["label"], reg)
        fun.name = name
        return fun
    if kind != "explicit":
        raise ParseError(f"unknown functor type {kind!r}")
    src = bundle.module(data["src"])
    dst = bundle.module(data["dst"])
    field = src.field
    on_simples = {tuple(e["key"]): int(e["value"]) for e in data["on_simples"]}
    c_symbols = {}
    for entry in data.get("c_symbols", []):
        rows = entry["entries"]
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = [_parse_element(field, v) for row in rows for v in row]
        c_symbols[tuple(entry["key"])] = Matrix(field, nrows, ncols, flat)
    return ModuleFunctorSpec(src, dst, on_simples, c_symbols, name=name)


def load(paths) -> InstanceBundle:
    """Parse and cross-link instance files; specs are validated by callers."""
    bundle = InstanceBundle()
    docs = []
    for path in paths:
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        bundle.digests[str(path)] = hashlib.sha256(raw).hexdigest()
        try:
            docs.append(json.loads(raw))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    for doc in docs:
        for name, data in doc.get("categories", {}).items():
            bundle.categories[name] = _load_category(name, data)
    for doc in docs:
        for name, data in doc.get("modules", {}).items():
            bundle.modules[name] = _load_module(name, data, bundle)
    for doc in docs:
        for name, data in doc.get("functors", {}).items():
            bundle.functors[name] = _load_functor(name, data, bundle)
    return bundle


def bundled_instance_paths() -> list:
    root = resources.files("modend").joinpath("instances")
    return sorted(str(p) for p in root.iterdir() if p.name.endswith(".json"))


class Report:
    """Deterministic machine-readable command report."""

    def __init__(self, command, digests, status: str, result):
        self.payload = {
            "command": list(command),
            "inputs": dict(sorted(digests.items())),
            "status": status,
            "result": result,
        }

    def dumps(self) -> str:
        return json.dumps(self.payload, sort_keys=True, separators=(",", ":"))


STATUS_EXIT = {"ok": 0, "validation-failed": 1, "certificate-failed": 2}


def _validate_gate(bundle: InstanceBundle):
    for rep in bundle.validate_all():
        if not rep.ok:
            raise ValidationError(f"{rep.subject}: {rep.entries[0]}")


def run(command, bundle: InstanceBundle) -> Report:
    """Dispatch a single command against a loaded bundle."""
    argv = list(command)
    if not argv:
        raise UnknownCommand("empty command")
    op, args = argv[0], argv[1:]
    digests = bundle.digests
    if op == "validate":
        reports = bundle.validate_all()
        result = {rep.subject: ([str(e) for e in rep.entries] if not rep.ok else "valid")
                  for rep in reports}
        status = "ok" if all(rep.ok for rep in reports) else "validation-failed"
        return Report(command, digests, status, result)
    if op == "suite":
        result, ok = run_suite(bundle)
        return Report(command, digests, "ok" if ok else "certificate-failed", result)
    _validate_gate(bundle)
    if op == "nat":
        names, flags = _split_flags(args)
        f, g = (bundle.functor(n) for n in names)
        mode = "both" if "--both" in flags else "oracle" if "--oracle" in flags else "end"
        res = theorems.nat_m_dim(f, g, mode)
        payload = {"dim": res.dim, "mode": mode}
        if mode == "both":
            payload["oracle_agrees"] = bool(res.oracle_agrees)
        return Report(command, digests, "ok", payload)
    if op in ("end", "coend"):
        if "--hom" in args:
            idx = args.index("--hom")
            fname, gname = args[idx + 1], args[idx + 2]
        else:
            raise UnknownCommand(f"{op} requires --hom F G")
        f, g = bundle.functor(fname), bundle.functor(gname)
        if op == "coend":
            sys_ = endengine.build_hom_coend_system(f, g)
            res = endengine.solve_coend(sys_)
            return Report(command, digests, "ok",
                          {"dim": res.dim, "relations": len(res.relations)})
        sys_ = endengine.build_nat_system(f, g)
        if "--ordinary" in args:
            sys_ = endengine.DinaturalSystem(field=sys_.field, blocks=sys_.blocks,
                                             conditions=[], kind="end",
                                             recipe="ordinary", meta=sys_.meta)
        if "--restrict" in args:
            subset = args[args.index("--restrict") + 1].split(",")
            sys_ = endengine.restrict_conditions(sys_, subset)
        res = endengine.solve_end(sys_)
        return Report(command, digests, "ok", {"dim": res.dim})
    if op == "serre":
        mod = bundle.module(args[0])
        res = theorems.serre_functor(mod)
        return Report(command, digests, "ok",
                      {"on_simples": {i: dict(v) for i, v in res.on_simples.items()},
                       "certificates": len(res.certificates)})
    if op == "character":
        mod = bundle.module(args[0])
        fun = bundle.functor(args[1])
        vec = theorems.internal_character(mod, fun)
        return Report(command, digests, "ok",
                      {"object": dict(zip(mod.base.simples, vec))})
    if op == "upsilon":
        cat = bundle.category(args[0])
        reg = bundle.module(f"{args[0]}_regular")
        vec = theorems.upsilon_regular(cat, args[1], reg)
        return Report(command, digests, "ok",
                      {"object": dict(zip(cat.simples, vec))})
    if op == "adjshift":
        cat = bundle.category(args[0])
        reg = bundle.module(f"{args[0]}_regular")
        res = theorems.adjoint_shift_check(cat, args[1], reg)
        status = "ok" if res.ok else "certificate-failed"
        return Report(command, digests, status,
                      {"equal": res.ok,
                       "lhs": dict(zip(cat.simples, res.lhs)),
                       "rhs": dict(zip(cat.simples, res.rhs))})
    if op == "homsuite":
        mod = bundle.module(args[0])
        rep = theorems.hom_lemma_suite(mod)
        status = "ok" if rep.ok else "certificate-failed"
        return Report(command, digests, status,
                      {"violations": [str(e) for e in rep.entries]})
    raise UnknownCommand(op)


def _split_flags(args):
    names = [a for a in args if not a.startswith("--")]
    flags = [a for a in args if a.startswith("--")]
    return names, flags


def run_suite(bundle: InstanceBundle):
    """Deterministic certificate run over the whole bundle."""
    lines = {}
    ok_all = True

    def record(name, ok, detail=""):
        nonlocal ok_all
        lines[name] = ("pass" if ok else "FAIL") + (f": {detail}" if detail else "")
        ok_all = ok_all and bool(ok)

    for rep in bundle.validate_all():
        record(f"validate::{rep.subject}", rep.ok,
               "" if rep.ok else str(rep.entries[0]))
    if not ok_all:
        return lines, False
    from . import blocks as blk
    for cname, cat in bundle.categories.items():
        bt = cat.tables
        reg_tab = bt.regular()
        for a in cat.simples:
            for b in cat.simples:
                lhs = blk.lev_flat(bt, blk.ctensor(bt, blk.simple_obj(a), blk.simple_obj(b)))
                rhs = _nested_lev(bt, a, b)
                record(f"ev-tensor-prod::{cname}::({a},{b})", lhs == rhs)
    for name, mod in bundle.modules.items():
        rep = theorems.hom_lemma_suite(mod)
        record(f"homsuite::{name}", rep.ok)
    for cname, cat in bundle.categories.items():
        reg = bundle.module(f"{cname}_regular")
        idf = bundle.functor(f"id_{cname}_regular")
        try:
            res = theorems.nat_m_dim(idf, idf, "both")
            record(f"nat-both::{cname}::id,id", res.dim == 1)
        except OracleMismatch as exc:
            record(f"nat-both::{cname}::id,id", False, str(exc))
        for y in cat.simples:
            for z in cat.simples:
                fy = bundle.functor(f"rmul_{cname}_{y}")
                fz = bundle.functor(f"rmul_{cname}_{z}")
                try:
                    res = theorems.nat_m_dim(fy, fz, "both")
                    record(f"nat-both::{cname}::{y},{z}",
                           res.dim == (1 if y == z else 0))
                except OracleMismatch as exc:
                    record(f"nat-both::{cname}::{y},{z}", False, str(exc))
        vec = theorems.internal_character(reg, idf)
        record(f"peter-weyl::{cname}", vec == tuple(1 if s == cat.unit else 0
                                                    for s in cat.simples), str(vec))
        try:
            sr = theorems.serre_functor(reg)
            ident = all(v == {p: (1 if p == i else 0) for p in reg.simples}
                        for i, v in sr.on_simples.items())
            record(f"serre::{cname}", ident)
        except SerreCertificateFailure as exc:
            record(f"serre::{cname}", False, str(exc))
        for x in cat.simples:
            try:
                theorems.upsilon_regular(cat, x, reg)
                record(f"upsilon::{cname}::{x}", True)
            except UpsilonMismatch as exc:
                record(f"upsilon::{cname}::{x}", False, str(exc))
        for y in cat.simples:
            res = theorems.adjoint_shift_check(cat, y, reg)
            record(f"adjshift::{cname}::{y}", res.ok,
                   "" if res.ok else f"{res.lhs} vs {res.rhs}")
    if "vec_over_vec_z2" in bundle.modules:
        mod = bundle.module("vec_over_vec_z2")
        forg = bundle.functor("forgetful")
        vec = theorems.internal_character(mod, forg)
        table = internal_hom(mod)
        record("peter-weyl::vec_over_vec_z2",
               vec == (1, 1) and vec == table.mult_vector("m", "m"), str(vec))
        try:
            theorems.serre_functor(mod)
            record("serre::vec_over_vec_z2", True)
        except SerreCertificateFailure as exc:
            record("serre::vec_over_vec_z2", False, str(exc))
    if "vec_z4" in bundle.categories:
        idf = bundle.functor("id_vec_z4_regular")
        sys_full = endengine.build_nat_system(idf, idf)
        d_c = endengine.solve_end(sys_full).dim
        d_d = endengine.solve_end(endengine.restrict_conditions(sys_full, ["0", "2"])).dim
        d_v = endengine.solve_end(endengine.restrict_conditions(sys_full, ["0"])).dim
        record("restriction-monotone::vec_z4", d_c <= d_d <= d_v,
               f"{d_c} <= {d_d} <= {d_v}")
        co = endengine.build_hom_coend_system(idf, idf)
        c_c = endengine.solve_coend(co).dim
        c_d = endengine.solve_coend(endengine.restrict_conditions(co, ["0", "2"])).dim
        c_v = endengine.solve_coend(endengine.restrict_conditions(co, ["0"])).dim
        record("restriction-monotone-coend::vec_z4", c_c <= c_d <= c_v,
               f"{c_c} <= {c_d} <= {c_v}")
    if "vec_z2_triv" in bundle.categories:
        idf = bundle.functor("id_vec_z2_triv_regular")
        sys_full = endengine.build_nat_system(idf, idf)
        full = endengine.solve_end(sys_full).dim
        vec_only = endengine.solve_end(
            endengine.restrict_conditions(sys_full, ["e"])).dim
        record("restriction-strict::vec_z2", full < vec_only, f"{full} < {vec_only}")
    return lines, ok_all


def _nested_lev(bt, a, b):
    """Right-hand side of the composite-evaluation identity for (a, b)."""
    from . import blocks as blk
    from .blocks import Mor
    reg = bt.regular()
    sa, sb = blk.simple_obj(a), blk.simple_obj(b)
    V = blk.ctensor(bt, sa, sb)
    Lb = blk.ctensor(bt, blk.ldual_flat(bt, sb), blk.ldual_flat(bt, sa))
    W = blk.ctensor(bt, V, Lb)
    one = blk.simple_obj(bt.unit)
    da, db = blk.ldual_flat(bt, sa), blk.ldual_flat(bt, sb)
    tail = blk.act_c(reg, db, blk.act_c(reg, da, one))
    chain = blk.runit_reg_inv(bt, W)
    chain = blk.assoc(reg, V, Lb, one) * chain
    chain = blk.whisker_c(reg, V, blk.assoc(reg, db, da, one)) * chain
    chain = blk.assoc(reg, sa, sb, tail) * chain
    chain = blk.whisker_c(reg, sa, blk.zeta_flat(reg, sb, blk.act_c(reg, da, one))) * chain
    chain = blk.zeta_flat(reg, sa, one) * chain
    phi = blk.phi_l(bt, sa, sb)
    twist = blk.ctensor_mor(bt, Mor.identity(bt.field, V), phi)
    return chain * twist


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="modend",
        description="Exact module-(co)end computations over skeletal fusion categories.")
    parser.add_argument("--instances", "-i", action="append", metavar="FILE",
                        help="instance file, repeatable (default: the bundled corpus)")
    parser.add_argument("command", nargs=argparse.REMAINDER,
                        help="validate | nat F G [--oracle|--both] | "
                             "end --hom F G [--restrict LABELS|--ordinary] | "
                             "coend --hom F G | serre M | character M U | "
                             "upsilon C X | adjshift C Y | homsuite M | suite")
    ns = parser.parse_args(argv)
    paths = ns.instances if ns.instances else bundled_instance_paths()
    if not ns.command:
        parser.print_help()
        return 0
    try:
        bundle = load(paths)
    except (ParseError, UnknownName, ValidationError) as exc:
        print(json.dumps({"status": "validation-failed", "error": str(exc)},
                         sort_keys=True, separators=(",", ":")))
        return 1
    try:
        report = run(ns.command, bundle)
    except (ParseError, ValidationError, UnknownName, NotATensorSubcategory) as exc:
        print(json.dumps({"status": "validation-failed", "error": str(exc)},
                         sort_keys=True, separators=(",", ":")))
        return 1
    except (OracleMismatch, SerreCertificateFailure, UpsilonMismatch) as exc:
        print(json.dumps({"status": "certificate-failed", "error": str(exc)},
                         sort_keys=True, separators=(",", ":")))
        return 2
    except UnknownCommand as exc:
        print(json.dumps({"status": "validation-failed",
                          "error": f"unknown command {exc}"},
                         sort_keys=True, separators=(",", ":")))
        return 1
    print(report.dumps())
    return STATUS_EXIT[report.payload["status"]]


if __name__ == "__main__":
    sys.exit(main())
