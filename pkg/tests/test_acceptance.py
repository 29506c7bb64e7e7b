"""Acceptance criteria 1 to 9, each at exact (zero) tolerance.

Every test prints one ``criterion N: PASS|FAIL`` line.  Criterion 1 is
mathematically unattainable as stated and is kept red with a strict xfail;
the line it prints reports the failure honestly.
"""

import random
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from math import comb
from pathlib import Path

import pytest

from conftest import (
    h4_nilpotent_rep,
    rand_algebra,
    rand_cocycle,
    rand_matrix,
    rand_module,
    rand_skew_bracket,
    rat,
)
from threelie import basis
from threelie.algebra import ThreeLieAlgebra, abelian, adjoint_rep, check_fundamental_identity, is_three_lie
from threelie.cochain import coboundary, cohomology_dim, d0
from threelie.deformation import (
    check_infinitesimal_deformation,
    check_power_identities,
    cross_term_violations,
    is_compatible,
    is_nijenhuis,
    lambda_separation_check,
    polynomial_operator,
    trivial_deformation_from_nijenhuis,
)
from threelie.exactla import RationalMatrix
from threelie.extension import (
    are_equivalent,
    build_extension,
    canonical_section,
    classify_extensions,
    equivalence_map,
    extract_cocycle,
    induced_rep,
    is_homomorphism,
)
from threelie.fixtures import A4, H4, coadjoint_rep, h4_nijenhuis_operators, non_three_lie
from threelie.representation import Representation, check_leibniz_module_axioms, check_R1, check_R2, zero_rep

FIX = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def verdict(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def perturbed(A: ThreeLieAlgebra, t: tuple, l: int) -> ThreeLieAlgebra:
    struct = {s: list(v) for s, v in A.structure}
    v = struct.setdefault(t, [0] * A.dim)
    v[l] += 1
    return ThreeLieAlgebra(A.dim, struct)


@pytest.mark.xfail(
    strict=True,
    reason="adding 1 to any of the four nonzero A4 constants gives another 3-Lie algebra "
    "(sum of eps_ijkl c_l e_l is 3-Lie for every c), so no violation can appear",
)
def test_criterion_1_fundamental_identity(verdict):
    base_ok = check_fundamental_identity(A4()) == [] and check_fundamental_identity(H4()) == []
    survivors = []
    for t in basis.triples(4):
        for l in range(4):
            if not check_fundamental_identity(perturbed(A4(), t, l), 1):
                survivors.append((t, l))
    detail = f"A4/H4 clean: {base_ok}; {16 - len(survivors)}/16 perturbations violate, still 3-Lie: {survivors}"
    verdict(1, base_ok and not survivors, detail)


def test_criterion_2_d_squared_is_zero(verdict):
    rng = random.Random(2)
    cases = bad = 0
    while cases < 200:
        A = rand_algebra(rng)
        kind = rng.choice(["adjoint", "zero", "other"])
        if kind == "adjoint":
            R = adjoint_rep(A)
        elif kind == "zero":
            R = zero_rep(A.dim, rng.randint(1, 3))
        else:
            R = rand_module(rng, A, max_dimV=3)
        nu = rand_matrix(rng, R.dimV, A.dim, rng.choice([0.3, 1.0]))
        if not coboundary(A, R, d0(A, R, nu)).is_zero():
            bad += 1
        cases += 1
    verdict(2, bad == 0, f"{cases} cases, {bad} nonzero")


def r2_only_broken(rng) -> Representation:
    # scalar actions on an abelian algebra always satisfy R1 but rarely R2
    while True:
        R = Representation(4, 1, {p: [[rat(rng)]] for p in basis.pairs(4)})
        if check_R2(abelian(4), R):
            return R


def test_criterion_3_module_axioms_match_representation(verdict):
    rng = random.Random(3)
    samples, mismatches, exactly_one, exactly_one_caught = 0, 0, 0, 0
    while samples < 120:
        choice = samples % 4
        if choice == 0:
            A = rand_algebra(rng)
            R = rand_module(rng, A, max_dimV=4)
        elif choice == 1:
            A = H4()
            R = h4_nilpotent_rep(rng, rng.randint(2, 3))
        elif choice == 2:
            A = rng.choice([A4(), H4(), abelian(3)])
            dimV = rng.randint(1, 2)
            R = Representation(
                A.dim, dimV, {p: rand_matrix(rng, dimV, dimV, 0.4) for p in basis.pairs(A.dim) if rng.random() < 0.5}
            )
        else:
            A, R = abelian(4), r2_only_broken(rng)
        r1, r2 = not check_R1(A, R, 1), not check_R2(A, R, 1)
        axioms = all(not v for v in check_leibniz_module_axioms(A, R, 1).values())
        mismatches += axioms != (r1 and r2)
        if r1 != r2:
            exactly_one += 1
            exactly_one_caught += not axioms
        samples += 1
    ok = mismatches == 0 and exactly_one >= 10 and exactly_one_caught == exactly_one
    verdict(3, ok, f"{samples} samples, {mismatches} mismatches, {exactly_one_caught}/{exactly_one} single-axiom breaks caught")


def test_criterion_4_lambda_separation(verdict):
    rng = random.Random(4)
    named = [(abelian(4), A4(), True), (abelian(4), non_three_lie(), False), (A4(), A4(), True), (H4(), A4(), None)]
    cases = [(A, w) for A, w, _ in named]
    named_ok = all(check_infinitesimal_deformation(A, w).ok == exp for A, w, exp in named if exp is not None)
    while len(cases) < 120:
        A = rand_algebra(rng)
        form = rng.randrange(4)
        if form == 0:
            w = rand_skew_bracket(rng, A.dim, rng.choice([0.1, 0.3, 0.6]))
        elif form == 1:
            w = ThreeLieAlgebra(A.dim, d0(A, adjoint_rep(A), rand_matrix(rng, A.dim, A.dim, 0.4)).coeffs)
        elif form == 2:
            w = ThreeLieAlgebra(A.dim, {t: [rat(rng) * c for c in v] for t, v in A.structure})
        else:
            w = rng.choice([A4(), H4(), non_three_lie()]) if A.dim == 4 else rand_skew_bracket(rng, A.dim, 0.2)
        cases.append((A, w))
    disagree = good = 0
    for A, w in cases:
        v = check_infinitesimal_deformation(A, w).ok
        good += v
        disagree += lambda_separation_check(A, w) != v
    ok = disagree == 0 and named_ok and 0 < good < len(cases)
    verdict(4, ok, f"{len(cases)} cases ({good} deformations), {disagree} disagreements, named cases ok: {named_ok}")


def nijenhuis_suite(rng) -> list:
    problems = []
    for A in (A4(), H4(), abelian(3), abelian(4), abelian(5)):
        if not is_nijenhuis(A, RationalMatrix.zeros(A.dim, A.dim)).ok:
            problems.append(f"zero rejected on dim {A.dim}")
    for n in (3, 4, 5):
        for _ in range(10):
            if not is_nijenhuis(abelian(n), rand_matrix(rng, n, n)).ok:
                problems.append(f"operator rejected on abelian({n})")
    ident = is_nijenhuis(A4(), RationalMatrix.identity(4))
    if ident.ok or not ident.image_bracket:
        problems.append("identity on A4 not rejected by the image-bracket condition")
    accepted = list(h4_nijenhuis_operators())
    for N in accepted:
        if not is_nijenhuis(H4(), N).ok:
            problems.append(f"H4 fixture operator rejected: {N}")
    for N in accepted:
        A = H4()
        _, cert = trivial_deformation_from_nijenhuis(A, N)
        if not cert.ok or sorted(cert.intertwining) != [-1, 1, 2]:
            problems.append("triviality certificate failed")
        powers = check_power_identities(A, N, 4)
        if not all(powers.powers.values()) or len(powers.powers) != 4:
            problems.append("a power N^k with k <= 4 is not Nijenhuis")
        if not all(powers.twists.values()) or len(powers.twists) != 6:
            problems.append("a twist identity with k + r <= 4 failed")
        for j in range(1, 4):
            for k in range(1, 4):
                Nj, Nk = N ** j, N ** k
                if cross_term_violations(A, Nj, Nk):
                    problems.append(f"cross terms of N^{j}, N^{k}")
                for _ in range(20):
                    a, b = rat(rng), rat(rng)
                    if not is_compatible(A, Nj.scale(a), Nk.scale(b)).ok:
                        problems.append(f"{a} N^{j} and {b} N^{k} not compatible")
        for _ in range(10):
            coeffs = [rat(rng) for _ in range(rng.randint(1, 4))]
            if not is_nijenhuis(A, polynomial_operator(N, coeffs)).ok:
                problems.append(f"polynomial {coeffs} of N not Nijenhuis")
    return problems


def test_criterion_5_nijenhuis_suite(verdict):
    problems = nijenhuis_suite(random.Random(5))
    verdict(5, not problems, "; ".join(problems[:5]) or "all checks exact")


def test_criterion_6_abelian_cohomology(verdict):
    got = {(n, m): cohomology_dim(abelian(n), zero_rep(n, m)) for n, m in [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2)]}
    ok = all(h == comb(n, 3) * m for (n, m), h in got.items())
    verdict(6, ok, ", ".join(f"(n={n}, dimV={m}): {h}" for (n, m), h in got.items()))


def extension_cases():
    return [
        (abelian(3), zero_rep(3, 1)),
        (abelian(3), zero_rep(3, 2)),
        (abelian(4), zero_rep(4, 2)),
        (H4(), adjoint_rep(H4())),
        (H4(), coadjoint_rep(H4())),
        (A4(), adjoint_rep(A4())),
    ]


def test_criterion_7_extension_round_trip(verdict):
    rng = random.Random(7)
    cases = extension_cases()
    failures = []
    for n in range(60):
        A, R = cases[n % len(cases)]
        w = rand_cocycle(rng, A, R)
        E = build_extension(A, R, w)
        if not is_three_lie(E.total):
            failures.append(f"case {n}: total algebra not 3-Lie")
        sigma = canonical_section(E)
        if extract_cocycle(E, sigma) != w:
            failures.append(f"case {n}: cocycle not recovered")
        if induced_rep(E, sigma) != R:
            failures.append(f"case {n}: representation not recovered")
        for _ in range(10):
            moved = RationalMatrix.identity(A.dim).vstack(rand_matrix(rng, R.dimV, A.dim, 0.6))
            if induced_rep(E, moved) != R:
                failures.append(f"case {n}: representation depends on the section")
    verdict(7, not failures, "; ".join(failures[:3]) or "60 cocycles, 10 sections each")


def test_criterion_8_equivalence_and_classification(verdict):
    rng = random.Random(8)
    cases = [c for c in extension_cases()]
    failures = []
    for n in range(60):
        A, R = cases[n % len(cases)]
        w = rand_cocycle(rng, A, R)
        w2 = w + d0(A, R, rand_matrix(rng, R.dimV, A.dim, 0.6))
        nu = are_equivalent(A, R, w, w2)
        if nu is None or d0(A, R, nu) != w - w2:
            failures.append(f"case {n}: no valid witness")
            continue
        if n % 3 == 0:
            E1, E2 = build_extension(A, R, w), build_extension(A, R, w2)
            if not is_homomorphism(E1.total, E2.total, equivalence_map(A, nu)):
                failures.append(f"case {n}: witness map is not a homomorphism")
    c = classify_extensions(abelian(3), zero_rep(3, 1))
    if c.dim_H != 1 or len(c.representatives) != 1:
        failures.append(f"classification found dim H = {c.dim_H}")
    elif c.representatives[0][1].total != H4():
        failures.append("representative total algebra differs from H4")
    verdict(8, not failures, "; ".join(failures[:3]) or "60 witnesses; abelian(3) with dimV 1 gives dim H = 1 and H4")


def f(name):
    return str(FIX / f"{name}.3lie.json")


CLI_COMMANDS = [
    ["check", f("a4")],
    ["check", f("non_three_lie")],
    ["check-rep", f("h4"), f("h4_coadjoint")],
    ["cohomology", f("h4"), f("h4_adjoint"), "--bases"],
    ["deform", f("abelian4"), f("non_three_lie")],
    ["nijenhuis", f("h4"), f("h4_diag1101"), "--powers", "4", "--poly", "1,-2,1/3"],
    ["nijenhuis", f("a4"), f("identity4")],
    ["compat", f("h4"), f("h4_diag1101"), f("h4_proj_e1")],
    ["extend", f("abelian3"), f("abelian3_trivial_v1"), f("abelian3_omega")],
    ["extract", f("abelian3_by_omega"), "--section", f("abelian3_section")],
    ["equiv", f("h4"), f("h4_adjoint"), f("h4_adjoint_omega"), f("h4_adjoint_omega_shifted")],
    ["classify", f("h4"), f("h4_adjoint")],
]


def run_cli(argv: list) -> tuple:
    p = subprocess.run([sys.executable, "-m", "threelie", *argv], capture_output=True, check=False)
    return p.returncode, p.stdout


def test_criterion_9_cli_determinism(verdict):
    assert {c[0] for c in CLI_COMMANDS} == {
        "check", "check-rep", "cohomology", "deform", "nijenhuis", "compat", "extend", "extract", "equiv", "classify",
    }
    jobs = [cmd + ["--jobs", str(j)] for cmd in CLI_COMMANDS for j in (1, 4) for _ in range(3)]
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(run_cli, jobs))
    differing = []
    for i, cmd in enumerate(CLI_COMMANDS):
        outs = results[6 * i : 6 * i + 6]
        if len(set(outs)) != 1 or outs[0][1] == b"":
            differing.append(cmd[0])
    verdict(9, not differing, f"{len(CLI_COMMANDS)} commands x 2 thread counts x 3 runs; differing: {differing}")
