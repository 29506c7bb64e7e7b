"""Command-line front end: every command prints one JSON report.

Exit status is 0 when the checked property holds or the construction
succeeded, 1 when the report lists violations, and 2 for unreadable input,
invalid documents and usage errors.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Optional, Sequence

from . import io
from .algebra import ThreeLieAlgebra, check_fundamental_identity, check_leibniz_rule
from .cochain import SkewCochain, first_cohomology, is_one_cocycle
from .deformation import (
    check_infinitesimal_deformation,
    check_power_identities,
    is_compatible,
    is_nijenhuis,
    lambda_separation_check,
    polynomial_operator,
    trivial_deformation_from_nijenhuis,
)
from .exactla import DimensionError, RationalMatrix, format_rational, parse_rational
from .extension import (
    AbelianExtension,
    are_equivalent,
    build_extension,
    canonical_section,
    classify_extensions,
    extract_cocycle,
    induced_rep,
)
from .report import PreconditionError, StructuralError, Violation
from .representation import Representation, check_leibniz_module_axioms, check_R1, check_R2

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
LARGE_DIM = 12
UNCAPPED_DIM = 6
DEFAULT_CAP = 100


class InputError(Exception):
    """Bad input that is not a document parse failure."""


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def _violation(v: Violation) -> dict:
    d = v.as_dict()
    d["where"] = _plain(v.where)
    return d


class Context:
    def __init__(self, args, err):
        self.args = args
        self.err = err
        self.inputs = []
        self.jobs = max(1, args.jobs)

    def load(self, path: str, kind: str) -> io.Document:
        self.inputs.append(path)
        return io.load(path, expect=kind)

    def cap(self, dim: int) -> Optional[int]:
        if self.args.max_violations is not None:
            return self.args.max_violations
        return None if dim <= UNCAPPED_DIM else DEFAULT_CAP

    def warn_large(self, dim: int):
        if dim > LARGE_DIM:
            print(
                f"warning: algebra dimension {dim} > {LARGE_DIM}; pair-cochain spaces are large and this may be slow",
                file=self.err,
            )


def _capped(vs: list, cap: Optional[int]) -> list:
    return vs if cap is None else vs[:cap]


def _algebra(ctx: Context, path: str) -> ThreeLieAlgebra:
    return ctx.load(path, "algebra").payload


def _rep(ctx: Context, path: str, A: ThreeLieAlgebra) -> Representation:
    R = ctx.load(path, "representation").payload
    if R.dim != A.dim:
        raise InputError(f"{path}: representation is for a dim-{R.dim} algebra, algebra has dim {A.dim}")
    return R


def _cocycle(ctx: Context, path: str, A: ThreeLieAlgebra, R: Representation) -> SkewCochain:
    w = ctx.load(path, "cochain").payload
    if w.degree != 1 or w.dim != A.dim or w.dimV != R.dimV:
        raise InputError(f"{path}: expected a degree-1 cochain from dim {A.dim} into dim {R.dimV}")
    return w


def _operator(ctx: Context, path: str, A: ThreeLieAlgebra) -> RationalMatrix:
    N = ctx.load(path, "operator").payload
    if N.shape != (A.dim, A.dim):
        raise InputError(f"{path}: operator is {N.rows}x{N.cols}, algebra has dim {A.dim}")
    return N


def _deformation(ctx: Context, path: str, A: ThreeLieAlgebra) -> ThreeLieAlgebra:
    ctx.inputs.append(path)
    doc = io.load(path)
    if doc.kind == "algebra":
        w = doc.payload
    elif doc.kind == "cochain" and doc.payload.degree == 1 and doc.payload.dimV == A.dim:
        w = ThreeLieAlgebra(A.dim, doc.payload.coeffs)
    else:
        raise InputError(f"{path}: a deformation is an algebra document or a degree-1 cochain into the algebra")
    if w.dim != A.dim:
        raise InputError(f"{path}: deformation has dim {w.dim}, algebra has dim {A.dim}")
    return w


def _obj(payload) -> dict:
    body = io.to_object(io.Document.of(payload))
    del body["kind"], body["version"]
    return body


def _hom_obj(nu: RationalMatrix) -> dict:
    return _obj(SkewCochain.from_hom(nu))


# commands; each returns (details, violations)


def cmd_check(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    cap = ctx.cap(A.dim)
    fi = check_fundamental_identity(A, cap)
    lr = check_leibniz_rule(A, cap)
    details = {"dim": A.dim, "fundamental_identity": not fi, "leibniz_rule": not lr}
    return details, _capped(fi + lr, cap)


def cmd_check_rep(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    R = _rep(ctx, ctx.args.rep, A)
    cap = ctx.cap(A.dim)
    fi = check_fundamental_identity(A, cap)
    r1, r2 = check_R1(A, R, cap), check_R2(A, R, cap)
    axioms = check_leibniz_module_axioms(A, R, cap)
    details = {
        "dim": A.dim,
        "dimV": R.dimV,
        "algebra_is_three_lie": not fi,
        "R1": not r1,
        "R2": not r2,
        "module_axioms": {k: not v for k, v in axioms.items()},
    }
    return details, _capped(fi + r1 + r2 + [v for name in sorted(axioms) for v in axioms[name]], cap)


def _cochain_list(ws) -> list:
    return [_obj(w) for w in ws]


def cmd_cohomology(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    R = _rep(ctx, ctx.args.rep, A)
    ctx.warn_large(A.dim)
    H = first_cohomology(A, R, ctx.jobs)
    details = {
        "dim": A.dim,
        "dimV": R.dimV,
        "dim_Z1": H.dim_Z,
        "dim_B1": H.dim_B,
        "dim_H1": H.dim_H,
        "dim_zero_cocycles": H.zero_cocycles_dim,
    }
    if ctx.args.bases:
        details["Z1_basis"] = _cochain_list(H.cocycles)
        details["B1_basis"] = _cochain_list(H.coboundaries)
    return details, []


def cmd_deform(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    w = _deformation(ctx, ctx.args.omega, A)
    cap = ctx.cap(A.dim)
    v = check_infinitesimal_deformation(A, w, cap)
    sep = lambda_separation_check(A, w)
    if sep != v.ok:
        raise StructuralError("sampled deformation check disagrees with the degree-wise check")
    details = {"dim": A.dim, "cocycle": v.cocycle, "bracket": v.bracket, "lambda_samples_pass": sep}
    return details, _capped(list(v.cocycle_violations) + list(v.bracket_violations), cap)


def _parse_poly(text: str) -> list:
    try:
        return [parse_rational(c) for c in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--poly: {exc}") from None


def cmd_nijenhuis(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    N = _operator(ctx, ctx.args.op, A)
    cap = ctx.cap(A.dim)
    v = is_nijenhuis(A, N, cap)
    details = {
        "dim": A.dim,
        "nijenhuis": v.ok,
        "torsion": not v.torsion,
        "image_bracket": not v.image_bracket,
        "second_order": v.second_order,
    }
    violations = v.violations()
    if v.ok:
        omega, cert = trivial_deformation_from_nijenhuis(A, N)
        details["twisted_bracket"] = _obj(omega)
        details["trivial_deformation"] = {
            "cocycle": cert.deformation.cocycle,
            "bracket": cert.deformation.bracket,
            "intertwining": {format_rational(lam): not bad for lam, bad in sorted(cert.intertwining.items())},
        }
        for bad in cert.intertwining.values():
            violations.extend(bad)
        violations.extend(cert.deformation.cocycle_violations + cert.deformation.bracket_violations)
        if ctx.args.powers is not None:
            pr = check_power_identities(A, N, ctx.args.powers)
            details["powers"] = {
                "nijenhuis": {str(k): ok for k, ok in sorted(pr.powers.items())},
                "twists": {f"{k}+{r}": ok for (k, r), ok in sorted(pr.twists.items())},
            }
            violations.extend(Violation("power_nijenhuis", (k,), (1,)) for k, ok in sorted(pr.powers.items()) if not ok)
            violations.extend(Violation("power_twist", kr, (1,)) for kr, ok in sorted(pr.twists.items()) if not ok)
    elif ctx.args.powers is not None:
        details["powers"] = "skipped: operator is not Nijenhuis"
    if ctx.args.poly is not None:
        coeffs = _parse_poly(ctx.args.poly)
        P = polynomial_operator(N, coeffs)
        pv = is_nijenhuis(A, P, cap)
        details["polynomial"] = {
            "coefficients": [format_rational(c) for c in coeffs],
            "operator": _obj(P)["matrix"],
            "nijenhuis": pv.ok,
        }
        violations.extend(Violation(f"polynomial_{x.check}", x.where, x.defect) for x in pv.violations())
    return details, _capped(violations, cap)


def cmd_compat(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    N1 = _operator(ctx, ctx.args.op1, A)
    N2 = _operator(ctx, ctx.args.op2, A)
    cap = ctx.cap(A.dim)
    v = is_compatible(A, N1, N2)
    sum_violations = is_nijenhuis(A, N1 + N2, cap).violations()
    details = {
        "dim": A.dim,
        "compatible": v.ok,
        "sum_nijenhuis": v.sum_nijenhuis,
        "cross_term": v.cross_term,
        "mixed_cube": v.mixed_cube,
        "mixed_cube_full": v.mixed_cube_full,
    }
    return details, sum_violations


def cmd_extend(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    R = _rep(ctx, ctx.args.rep, A)
    w = _cocycle(ctx, ctx.args.omega, A, R)
    E = build_extension(A, R, w)
    details = {"dim": A.dim, "dimV": R.dimV, "split": E.split, "total": _obj(E.total)}
    if ctx.args.out:
        io.dump(E, ctx.args.out)
        details["written"] = ctx.args.out
    return details, []


def _extension(ctx: Context, path: str) -> AbelianExtension:
    payload = ctx.load(path, "extension").payload
    if isinstance(payload, io.CocycleExtension):
        return payload.extension()
    return payload


def cmd_extract(ctx: Context):
    E = _extension(ctx, ctx.args.extension)
    sigma = canonical_section(E)
    if ctx.args.section:
        nu = ctx.load(ctx.args.section, "cochain").payload
        if nu.degree != 0 or (nu.dim, nu.dimV) != (E.split, E.module_dim):
            raise InputError(f"{ctx.args.section}: a section is a degree-0 cochain from dim {E.split} into dim {E.module_dim}")
        sigma = sigma + RationalMatrix.zeros(E.split, E.split).vstack(nu.to_hom())
    R = induced_rep(E, sigma)
    w = extract_cocycle(E, sigma)
    if not is_one_cocycle(E.base, R, w):
        raise StructuralError("extracted cochain is not a 1-cocycle")
    details = {
        "split": E.split,
        "base": _obj(E.base),
        "module": _obj(R),
        "cocycle": _obj(w),
    }
    return details, []


def cmd_equiv(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    R = _rep(ctx, ctx.args.rep, A)
    w1 = _cocycle(ctx, ctx.args.omega1, A, R)
    w2 = _cocycle(ctx, ctx.args.omega2, A, R)
    ctx.warn_large(A.dim)
    nu = are_equivalent(A, R, w1, w2, ctx.jobs)
    H = first_cohomology(A, R, ctx.jobs)
    details = {"dim": A.dim, "dimV": R.dimV, "equivalent": nu is not None, "dim_zero_cocycles": H.zero_cocycles_dim}
    if nu is None:
        return details, [Violation("cohomologous", (), (w1 - w2).coordinates())]
    details["witness"] = _hom_obj(nu)
    return details, []


def cmd_classify(ctx: Context):
    A = _algebra(ctx, ctx.args.algebra)
    R = _rep(ctx, ctx.args.rep, A)
    ctx.warn_large(A.dim)
    c = classify_extensions(A, R, ctx.jobs)
    details = {
        "dim": A.dim,
        "dimV": R.dimV,
        "dim_H1": c.dim_H,
        "dim_Z1": len(c.cocycles),
        "dim_B1": len(c.coboundaries),
        "dim_zero_cocycles": c.zero_cocycles_dim,
        "Z1_basis": _cochain_list(c.cocycles),
        "B1_basis": _cochain_list(c.coboundaries),
        "representatives": [{"cocycle": _obj(w), "total": _obj(E.total)} for w, E in c.representatives],
    }
    return details, []


COMMANDS = {
    "check": cmd_check,
    "check-rep": cmd_check_rep,
    "cohomology": cmd_cohomology,
    "deform": cmd_deform,
    "nijenhuis": cmd_nijenhuis,
    "compat": cmd_compat,
    "extend": cmd_extend,
    "extract": cmd_extract,
    "equiv": cmd_equiv,
    "classify": cmd_classify,
}



def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-violations", type=_positive, default=None, metavar="N",
                        help=f"cap on listed violations (default: all for dim <= {UNCAPPED_DIM}, else {DEFAULT_CAP})")
    common.add_argument("--human", action="store_true", help="render the report as text instead of JSON")
    common.add_argument("--jobs", type=_positive, default=1, metavar="N", help="worker threads for matrix assembly")

    p = argparse.ArgumentParser(prog="threelie", description="Exact checks and constructions for 3-Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_, *positional):
        s = sub.add_parser(name, parents=[common], help=help_, description=help_)
        for arg in positional:
            s.add_argument(arg.lower(), metavar=arg)
        return s

    add("check", "fundamental identity and Leibniz rule of the fundamental objects", "ALGEBRA")
    add("check-rep", "representation axioms and the induced Leibniz module axioms", "ALGEBRA", "REP")
    s = add("cohomology", "dimensions of degree-1 cocycles, coboundaries and cohomology", "ALGEBRA", "REP")
    s.add_argument("--bases", action="store_true", help="include bases of cocycles and coboundaries")
    add("deform", "whether ALGEBRA + lambda OMEGA is a 3-Lie bracket for all lambda", "ALGEBRA", "OMEGA")
    s = add("nijenhuis", "Nijenhuis conditions and the induced trivial deformation", "ALGEBRA", "OP")
    s.add_argument("--powers", type=_positive, metavar="K", help="check the power identities up to N^K")
    s.add_argument("--poly", metavar="C1,C2,...", help="also check c1 N + c2 N^2 + ...")
    add("compat", "whether OP1 + OP2 is Nijenhuis", "ALGEBRA", "OP1", "OP2")
    s = add("extend", "build the abelian extension defined by a 1-cocycle", "ALGEBRA", "REP", "OMEGA")
    s.add_argument("--out", metavar="FILE", help="write the extension document here")
    s = add("extract", "recover the representation and cocycle of an extension", "EXTENSION")
    s.add_argument("--section", metavar="FILE",
                   help="degree-0 cochain nu; the section is x -> x + nu(x) (default nu = 0)")
    add("equiv", "whether two 1-cocycles differ by a coboundary, with a witness", "ALGEBRA", "REP", "OMEGA1", "OMEGA2")
    add("classify", "degree-1 cohomology and one extension per cohomology basis direction", "ALGEBRA", "REP")
    return p


def render_human(report: dict) -> str:
    lines = [f"command: {report['command']}", f"inputs:  {' '.join(report['inputs'])}", f"verdict: {report['verdict']}"]

    def walk(d, indent):
        for k in sorted(d):
            v = d[k]
            if isinstance(v, dict):
                lines.append(f"{indent}{k}:")
                walk(v, indent + "  ")
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(f"{indent}{k}: [{len(v)} items]")
            elif isinstance(v, list) and v and isinstance(v[0], list):
                lines.append(f"{indent}{k}:")
                lines.extend(f"{indent}  {' '.join(map(str, row))}" for row in v)
            elif isinstance(v, list):
                lines.append(f"{indent}{k}: {' '.join(map(str, v))}")
            else:
                lines.append(f"{indent}{k}: {v}")

    walk(report["details"], "  ")
    vs = report.get("violations", [])
    if vs:
        lines.append(f"violations ({len(vs)}):")
        w = max(len(v["check"]) for v in vs)
        for v in vs:
            lines.append(f"  {v['check']:<{w}}  at {v['where']}  defect {' '.join(v['defect'])}")
    return "\n".join(lines) + "\n"


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Parse arguments, run one command, print its report; return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_PASS
    ctx = Context(args, err)
    report = {"command": args.command, "inputs": ctx.inputs}
    try:
        details, violations = COMMANDS[args.command](ctx)
        code = EXIT_FAIL if violations else EXIT_PASS
        report.update(
            verdict="fail" if violations else "pass",
            details=details,
            violations=[_violation(v) for v in violations],
        )
    except PreconditionError as exc:
        code = EXIT_FAIL
        report.update(verdict="fail", details={"precondition": str(exc)},
                      violations=[_violation(v) for v in exc.violations] or [_violation(Violation("precondition", (), (1,)))])
    except io.DocumentError as exc:
        code = EXIT_ERROR
        report.update(verdict="error", details={"diagnostics": [f"{exc.source}: {loc}: {msg}" for loc, msg in exc.problems]},
                      violations=[])
        print(str(exc), file=err)
    except (InputError, DimensionError, StructuralError) as exc:
        code = EXIT_ERROR
        report.update(verdict="error", details={"diagnostics": [str(exc)]}, violations=[])
        print(f"error: {exc}", file=err)
    report["inputs"] = list(ctx.inputs)
    out.write(render_human(report) if args.human else io.dumps_canonical(report))
    return code


def main() -> None:
    sys.exit(run())
