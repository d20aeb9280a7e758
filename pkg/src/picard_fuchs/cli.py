"""Command-line driver: ``picard-fuchs <group> <command> [options]``.

Every command builds one JSON-able document
``{command, inputs, result, timings}`` and renders it as text, JSON or LaTeX.
Numbers are always exact integer or rational strings.  The j-invariant is
normalized so that j(i) = 1 (not 1728); Box and the master equation assume this.

Exit codes: 0 success, 1 a verification answered "no", 2 usage or parse error,
3 computational failure (stuck reduction or order bound).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import Poly, RatField, RatFunc
from .expr import ParseError, parse_expr, ratfunc_num_den, ratfunc_to_expr_str, to_poly, to_ratfunc
from .griffiths_dwork import OrderBoundExceeded, PicardFuchsODE, StuckReduction

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- value conversion --------------------------------------------------------------


def jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, RatFunc):
        return ratfunc_to_expr_str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if dataclasses.is_dataclass(v):
        return {f.name: jsonable(getattr(v, f.name)) for f in dataclasses.fields(v)}
    return str(v)


def ode_result(ode: PicardFuchsODE) -> dict:
    ode = ode.normalize()
    return {
        "order": ode.order,
        "var": ode.indep_var,
        "coefficients": [dict(zip(("num", "den"), ratfunc_num_den(c))) for c in ode.coefficients],
        "normalized": ode.normalized,
    }


# -- rendering ------------------------------------------------------------------------


def _latex_poly(s: str) -> str:
    s = re.sub(r"\^(\d+)", r"^{\1}", s)
    return s.replace("*", " ")


def _latex_coeff(c: dict) -> str:
    num, den = _latex_poly(c["num"]), _latex_poly(c["den"])
    return num if c["den"] == "1" else rf"\frac{{{num}}}{{{den}}}"


def _deriv(i: int, var: str, latex: bool) -> str:
    if i <= 3:
        return "f" + "'" * i + (f"({var})" if latex else "")
    return (f"f^{{({i})}}({var})" if latex else f"f^({i})")


def render_ode_text(res: dict) -> str:
    parts = []
    for i in range(res["order"], -1, -1):
        c = res["coefficients"][i]
        if c["num"] == "0":
            continue
        coeff = c["num"] if c["den"] == "1" else f"({c['num']})/({c['den']})"
        parts.append(f"({coeff})*{_deriv(i, res['var'], False)}")
    return " + ".join(parts) + " = 0"


def render_ode_latex(res: dict) -> str:
    parts = []
    for i in range(res["order"], -1, -1):
        c = res["coefficients"][i]
        if c["num"] == "0":
            continue
        parts.append(rf"\left({_latex_coeff(c)}\right) {_deriv(i, res['var'], True)}")
    return r"\[ " + " + ".join(parts) + r" = 0 \]"


def _flat(prefix: str, v, out: List[str]):
    if isinstance(v, dict):
        for k, x in v.items():
            _flat(f"{prefix}.{k}" if prefix else k, x, out)
    elif isinstance(v, list) and v and any(isinstance(x, (dict, list)) for x in v):
        for i, x in enumerate(v):
            _flat(f"{prefix}[{i}]", x, out)
    else:
        out.append(f"{prefix}: {v if not isinstance(v, list) else ', '.join(map(str, v))}")


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True)
    res = doc["result"]
    is_ode = "coefficients" in res and "order" in res
    if fmt == "latex":
        if is_ode:
            return render_ode_latex(res)
        lines = []
        _flat("", res, lines)
        body = "\n".join(r"\texttt{" + _latex_escape(k) + "} & " + _latex_escape(v) + r" \\"
                         for k, _, v in (ln.partition(": ") for ln in lines))
        return "\\begin{tabular}{ll}\n" + body + "\n\\end{tabular}"
    lines = []
    if "verdict" in res:
        lines.append(res["verdict"])
    if is_ode:
        lines.append(f"order {res['order']}")
        lines.append(render_ode_text(res))
    else:
        _flat("", {k: v for k, v in res.items() if k != "verdict"}, lines)
    return "\n".join(lines)


def _latex_escape(s: str) -> str:
    return s.replace("\\", r"\textbackslash{}").replace("_", r"\_").replace("&", r"\&").replace("%", r"\%")


# -- input helpers -------------------------------------------------------------------


def _field(var: str) -> RatField:
    return RatField((var,))


def _ratfunc(src: str, F: RatField) -> RatFunc:
    return to_ratfunc(parse_expr(src, F.names), F)


def _names(s: str) -> tuple:
    names = tuple(v.strip() for v in s.split(",") if v.strip())
    if not names:
        raise UsageError("empty variable list")
    return names


def _poly(src: str, coords: tuple, params: tuple) -> Poly:
    return to_poly(parse_expr(src, set(coords) | set(params)), coords, RatField(params))


def _gens(src: str, coords, params) -> List[Poly]:
    return [_poly(g, coords, params) for g in src.split(";") if g.strip()]


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- commands: pf ----------------------------------------------------------------------


def cmd_pf_curve(a):
    from .families import weierstrass_cubic
    from .griffiths_dwork import picard_fuchs_ode

    F = _field(a.var)
    g2, g3 = _ratfunc(a.g2, F), _ratfunc(a.g3, F)
    ode = picard_fuchs_ode(weierstrass_cubic(g2, g3), F, a.var, max_order=a.max_order or 2)
    return {"g2": a.g2, "g3": a.g3, "var": a.var}, ode_result(ode)


def cmd_pf_k3(a):
    from .families import k3_family_ode

    F = _field(a.var)
    if (a.b is None) == (a.b_squared is None):
        raise UsageError("give exactly one of --b and --b-squared")
    b_sq = _ratfunc(a.b_squared, F) if a.b_squared is not None else _ratfunc(a.b, F) ** 2
    d = _ratfunc(a.d, F)
    ode = k3_family_ode(b_sq, d, max_order=a.max_order or 4)
    return {"b": a.b, "b_squared": a.b_squared, "d": a.d, "var": a.var}, ode_result(ode)


def _system_result(S):
    return {"params": list(S.params), "operators": [str(L) for L in S.canonical_basis()]}


def cmd_pf_k3_system(a):
    from .families import k3_system, k3_system_ud

    S = k3_system_ud() if a.b_squared_flag else k3_system()
    return {"b_squared": a.b_squared_flag}, _system_result(S)


def cmd_pf_params(a):
    from .griffiths_dwork import picard_fuchs_system

    coords, params = _names(a.coords), _names(a.params)
    Q = _poly(a.poly, coords, params)
    S = picard_fuchs_system(Q, RatField(params), order=a.order)
    return {"poly": a.poly, "coords": list(coords), "params": list(params), "order": a.order}, _system_result(S)


# -- commands: ode ---------------------------------------------------------------------


def cmd_ode_pnf(a):
    from .ode import LinearODE, projective_normal_form

    F = _field(a.var)
    coeffs = [_ratfunc(c, F) for c in a.coeff]
    p = projective_normal_form(LinearODE(a.var, coeffs))
    return {"coefficients": a.coeff, "var": a.var}, {"p2": p.p2}


def cmd_ode_schwarzian(a):
    from .ode import schwarzian

    F = _field(a.var)
    return {"j": a.j, "var": a.var}, {"schwarzian": schwarzian(_ratfunc(a.j, F), a.var)}


def cmd_ode_box(a):
    from .ode import box

    F = _field(a.var)
    return {"j": a.j, "var": a.var}, {"box": box(_ratfunc(a.j, F), a.var)}


def cmd_ode_tensor(a):
    from .ode import tensor_product_4

    F = _field(a.var)
    ode = tensor_product_4(_ratfunc(a.p2, F), _ratfunc(a.q2, F), a.var)
    return {"p2": a.p2, "q2": a.q2, "var": a.var}, ode_result(ode)


def cmd_ode_fano(a):
    from .ode import fano_check

    F = _field(a.var)
    ok = fano_check(_ratfunc(a.p2, F), _ratfunc(a.q2, F))
    return {"p2": a.p2, "q2": a.q2, "var": a.var}, {"verdict": _verdict(ok), "ok": ok}


# -- commands: modular -------------------------------------------------------------------


def cmd_modular_psi(a):
    from .catalog import catalog_psi

    p = catalog_psi(a.n)
    return {"n": a.n}, {"psi": str(p.poly), "weighted_degree": p.weighted_degree(), "even_in_b": p.is_even_in_b()}


def cmd_modular_param(a):
    from .catalog import catalog_parametrization

    m = catalog_parametrization(a.n, a.var)
    return {"n": a.n, "var": a.var}, {"b_squared": m.b_sq, "d": m.d}


def cmd_modular_check_master(a):
    from .catalog import ModularParametrization, catalog_parametrization, master_equation_check, \
        psi_vanishing_check

    F = _field(a.var)
    extra = {}
    if a.n is not None:
        m = catalog_parametrization(a.n, a.var)
        if a.n in (2, 3):
            extra["psi_vanishes"] = psi_vanishing_check(a.n)
    elif a.j1 is not None and a.j2 is not None:
        m = ModularParametrization.from_j_pair(_ratfunc(a.j1, F), _ratfunc(a.j2, F))
    elif a.b_squared is not None and a.d is not None:
        m = ModularParametrization(None, _ratfunc(a.b_squared, F), _ratfunc(a.d, F))
    else:
        raise UsageError("give --n, or --j1 and --j2, or --b-squared and --d")
    ok = master_equation_check(m)
    inputs = {"n": a.n, "j1": a.j1, "j2": a.j2, "b_squared": a.b_squared, "d": a.d, "var": a.var}
    return inputs, {"verdict": _verdict(ok), "ok": ok, **extra}


def cmd_modular_qvalue(a):
    from .catalog import qvalue_catalog

    return {"label": a.label}, {"q_value": qvalue_catalog(a.label).q_value}


def cmd_modular_level2(a):
    from .catalog import level2_hauptmodul_example

    r = level2_hauptmodul_example()
    return {}, {"verdict": _verdict(r.ok), "ok": r.ok, "phi2_vanishes": r.phi2_vanishes,
                "transports_agree": r.transports_agree, "matches_record": r.matches_record,
                "transported": r.transported, "record": r.record_label}


# -- commands: geom ------------------------------------------------------------------------


def _report(r):
    d = jsonable(r)
    return {"verdict": _verdict(r.ok), "ok": r.ok, **d}


def cmd_geom_isogeny(a):
    from .correspondences import verify_isogeny

    return {"n": a.n, "conjugate": not a.no_conjugate}, _report(verify_isogeny(a.n, conjugate=not a.no_conjugate))


def cmd_geom_beauville(a):
    from .correspondences import verify_beauville_iso

    return {"spot_checks": a.spot_checks, "seed": a.seed}, _report(verify_beauville_iso(a.spot_checks, a.seed))


def cmd_geom_toric_curve(a):
    from .correspondences import toric_to_weierstrass

    return {}, _report(toric_to_weierstrass())


def cmd_geom_toric_k3(a):
    from .correspondences import toric_to_inose

    return {}, _report(toric_to_inose())


def cmd_geom_gkz(a):
    from .correspondences import gkz_agreement

    return {}, _report(gkz_agreement())


# -- commands: gb ---------------------------------------------------------------------------


def _gb(a):
    from .groebner import Ideal, buchberger

    coords = _names(a.vars)
    params = _names(a.params) if a.params else ()
    gens = _gens(a.gens, coords, params)
    if not gens:
        raise UsageError("no generators")
    field = RatField(params) if params else None
    return coords, params, buchberger(Ideal(gens, coords, field))


def cmd_gb_compute(a):
    coords, params, gb = _gb(a)
    return ({"gens": a.gens, "vars": list(coords), "params": list(params)},
            {"basis": [str(g) for g in gb.basis], "cofactors_ok": gb.check_cofactors(),
             "unit_ideal": gb.is_unit_ideal()})


def cmd_gb_reduce(a):
    from .groebner import normal_form

    coords, params, gb = _gb(a)
    r, _ = normal_form(_poly(a.poly, coords, params), gb)
    return {"gens": a.gens, "poly": a.poly, "vars": list(coords), "params": list(params)}, {"remainder": str(r)}


def cmd_gb_member(a):
    from .groebner import membership_certificate

    coords, params, gb = _gb(a)
    p = _poly(a.poly, coords, params)
    cert = membership_certificate(p, gb)
    ok = cert is not None
    res = {"verdict": _verdict(ok), "ok": ok}
    if ok:
        res["certificate"] = [str(c) for c in cert]
    return {"gens": a.gens, "poly": a.poly, "vars": list(coords), "params": list(params)}, res


# -- commands: verify --------------------------------------------------------------------------


def cmd_verify_suite(a):
    from .suite import CRITERIA, run_suite

    nums = sorted(CRITERIA) if not a.only else [int(x) for x in a.only.split(",")]
    for n in nums:
        if n not in CRITERIA:
            raise UsageError(f"no criterion {n}; known: 1-{max(CRITERIA)}")
    results = run_suite(nums, threads=a.threads)
    ok = all(r.ok for r in results)
    table = [f"{r.number:2d}  {'PASS' if r.ok else 'FAIL'}  {r.title}" for r in results]
    res = {"verdict": f"{sum(r.ok for r in results)}/{len(results)} criteria pass", "ok": ok,
           "table": table, "details": {str(r.number): r.detail for r in results}}
    return {"only": nums, "threads": a.threads}, res


# -- parser -------------------------------------------------------------------------------------


def _add_common(p, var=True):
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    if var:
        p.add_argument("--var", default="t", help="independent variable (default t)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="picard-fuchs", description=__doc__.split("\n")[0])
    groups = ap.add_subparsers(dest="group", required=True)

    def leaf(group_parser, name, func, var=True, help=None):
        p = group_parser.add_parser(name, help=help)
        _add_common(p, var)
        p.set_defaults(func=func)
        return p

    pf = groups.add_parser("pf", help="Picard-Fuchs equations by Griffiths-Dwork").add_subparsers(
        dest="cmd", required=True)
    p = leaf(pf, "curve", cmd_pf_curve, help="Weierstrass family y^2 z = 4x^3 - g2 x z^2 - g3 z^3")
    p.add_argument("--g2", required=True)
    p.add_argument("--g3", required=True)
    p.add_argument("--max-order", type=int)
    p = leaf(pf, "k3", cmd_pf_k3, help="Inose family Q(1, b(t), d(t))")
    p.add_argument("--b")
    p.add_argument("--b-squared")
    p.add_argument("--d", required=True)
    p.add_argument("--max-order", type=int)
    p = leaf(pf, "k3-system", cmd_pf_k3_system, var=False, help="the (b, d) partial-derivative system")
    p.add_argument("--b-squared", dest="b_squared_flag", action="store_true", help="write the system in u = b^2")
    p = leaf(pf, "params", cmd_pf_params, var=False, help="partial-derivative system of a hypersurface")
    p.add_argument("--poly", required=True)
    p.add_argument("--coords", default="x,y,z")
    p.add_argument("--params", required=True)
    p.add_argument("--order", type=int, default=2)

    ode = groups.add_parser("ode", help="linear ODE calculus").add_subparsers(dest="cmd", required=True)
    p = leaf(ode, "pnf", cmd_ode_pnf, help="projective normal form of a second-order ODE")
    p.add_argument("--coeff", action="append", required=True, help="c0, c1, c2 in order (repeat the flag)")
    p = leaf(ode, "schwarzian", cmd_ode_schwarzian)
    p.add_argument("--j", required=True)
    p = leaf(ode, "box", cmd_ode_box)
    p.add_argument("--j", required=True)
    for name, func in (("tensor", cmd_ode_tensor), ("fano", cmd_ode_fano)):
        p = leaf(ode, name, func)
        p.add_argument("--p2", required=True)
        p.add_argument("--q2", required=True)

    mod = groups.add_parser("modular", help="catalog data and modular checks").add_subparsers(
        dest="cmd", required=True)
    p = leaf(mod, "psi", cmd_modular_psi, var=False)
    p.add_argument("--n", type=int, required=True)
    p = leaf(mod, "param", cmd_modular_param)
    p.add_argument("--n", type=int, required=True)
    p = leaf(mod, "check-master", cmd_modular_check_master)
    p.add_argument("--n", type=int)
    p.add_argument("--j1")
    p.add_argument("--j2")
    p.add_argument("--b-squared")
    p.add_argument("--d")
    p = leaf(mod, "qvalue", cmd_modular_qvalue, var=False)
    p.add_argument("--label", required=True)
    leaf(mod, "level2-example", cmd_modular_level2, var=False)

    geom = groups.add_parser("geom", help="isogenies and toric correspondences").add_subparsers(
        dest="cmd", required=True)
    p = leaf(geom, "isogeny", cmd_geom_isogeny, var=False)
    p.add_argument("--n", type=int, required=True, choices=(2, 3, 6))
    p.add_argument("--no-conjugate", action="store_true")
    p = leaf(geom, "beauville", cmd_geom_beauville, var=False)
    p.add_argument("--spot-checks", type=int, default=8)
    p.add_argument("--seed", type=int, default=2024)
    leaf(geom, "toric-curve", cmd_geom_toric_curve, var=False)
    leaf(geom, "toric-k3", cmd_geom_toric_k3, var=False)
    leaf(geom, "gkz", cmd_geom_gkz, var=False)

    gb = groups.add_parser("gb", help="Groebner bases (grevlex)").add_subparsers(
        dest="cmd", required=True)
    for name, func in (("compute", cmd_gb_compute), ("reduce", cmd_gb_reduce), ("member", cmd_gb_member)):
        p = leaf(gb, name, func, var=False)
        p.add_argument("--gens", required=True, help="generators separated by ';'")
        p.add_argument("--vars", default="x,y,z")
        p.add_argument("--params", default="")
        if name != "compute":
            p.add_argument("--poly", required=True)

    ver = groups.add_parser("verify", help="reproduction suite").add_subparsers(dest="cmd", required=True)
    p = leaf(ver, "suite", cmd_verify_suite, var=False)
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--threads", type=int, default=1)
    return ap


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    command = f"{a.group} {a.cmd}"
    t0 = time.perf_counter_ns()
    try:
        inputs, result = a.func(a)
    except ParseError as exc:
        print(f"{command}: parse error at {exc}", file=err)
        return EXIT_USAGE
    except (StuckReduction, OrderBoundExceeded) as exc:
        print(f"{command}: computation failed: {exc}", file=err)
        return EXIT_COMPUTE
    except (UsageError, ValueError, KeyError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"{command}: {msg}", file=err)
        return EXIT_USAGE
    elapsed_us = (time.perf_counter_ns() - t0) // 1000
    doc = {"command": command, "inputs": jsonable({k: v for k, v in inputs.items() if v is not None}),
           "result": jsonable(result), "timings": {"total_us": elapsed_us}}
    print(render(doc, a.format), file=out)
    return EXIT_FAIL if result.get("ok") is False else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
