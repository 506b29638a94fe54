"""
Verification suites: each check recomputes one published number or one
structural identity and compares it with the expected value.

Suites: core, sl-m1, sl32-light, sl32-heavy, all.
"""
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from tqdm import tqdm

from cohom_algebra import (
    LieSuperalgebra,
    Weight,
    build_algebra,
    check_eps_relation,
    sign_of,
)
from cohom_complex import (
    check_extension_theorem,
    check_square_zero,
    cocycle_relation_g,
    cohomology,
    invariant_subcomplex,
    is_coboundary,
    supertrace_form_cochain,
    trace_form_cochain,
)
from cohom_config import Budget, BudgetExceeded, get_settings, set_modular_prepass
from cohom_linalg import add_scaled
from cohom_modules import (
    Module,
    adjoint_module,
    build_V_realization,
    check_representation,
    d_eigenvalues,
    dual_module,
    ext_power_eps,
    kac_module,
    natural_module,
    simple_L0_module,
    simple_module,
    sym_power_eps,
    tau_twist,
    trivial_module,
    weight_multiset,
)
from cohom_screen import (
    d_range_of_U,
    dual_highest_weight,
    dual_partner,
    family_membership,
    instantiate_family,
    run_screen,
)
from cohom_structure import analyze_W_structure, composition_factors, decompose_L0


SUITES = ("core", "sl-m1", "sl32-light", "sl32-heavy", "all")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

SL32_KAC_LEVEL = [
    "(0,0,0|0,0)", "(1,1,1|-1,-2)", "(0,-1,-1|1,1)", "(2,1,1|-1,-3)", "(0,0,-1|1,0)",
    "(1,1,0|0,-2)", "(3,1,1|-1,-4)", "(0,0,-2|2,0)", "(2,1,0|0,-3)", "(1,1,-1|1,-2)",
    "(3,1,0|0,-4)", "(1,1,-2|2,-2)", "(2,1,-1|1,-3)",
]
SL32_RULED_OUT = ["(3,1,0|0,-4)", "(1,1,-2|2,-2)", "(2,1,-1|1,-3)"]
NEGATIVE_CONTROL_SAMPLES = 5
NEGATIVE_CONTROL_MAX_DIM = 32


@dataclass
class CheckResult:
    name: str
    suite: str
    status: str = "ok"
    expected: str = ""
    observed: str = ""
    elapsed: float = 0.0
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "suite": self.suite,
            "status": self.status,
            "expected": self.expected,
            "observed": self.observed,
            "elapsed": round(self.elapsed, 3),
            "notes": self.notes,
        }

    def tsv_row(self) -> str:
        cells = [self.name, self.suite, self.status, self.expected, self.observed, f"{self.elapsed:.3f}"]
        return "\t".join(c.replace("\t", " ") for c in cells)


# ---------------------------------------------------------------------------
# Consistency checks
# ---------------------------------------------------------------------------

def _jacobi_failures(L: LieSuperalgebra) -> int:
    failures = 0
    p = L.parity
    for a, b, c in product(range(L.dim), repeat=3):
        lhs: dict = {}
        for i, x in L.bracket_basis(b, c).items():
            add_scaled(lhs, L.bracket_basis(a, i), x)
        rhs: dict = {}
        for i, x in L.bracket_basis(a, b).items():
            add_scaled(rhs, L.bracket_basis(i, c), x)
        for i, x in L.bracket_basis(a, c).items():
            add_scaled(rhs, L.bracket_basis(b, i), x * sign_of(p[a] * p[b]))
        if lhs != rhs:
            failures += 1
    return failures


def _grading_failures(L: LieSuperalgebra) -> int:
    failures = 0
    for a in range(L.dim):
        for b in range(L.dim):
            for i in L.bracket_basis(a, b):
                if L.parity[i] != (L.parity[a] + L.parity[b]) % 2:
                    failures += 1
                if L.z_degree[i] != L.z_degree[a] + L.z_degree[b]:
                    failures += 1
    return failures


def _tau_failures(L: LieSuperalgebra) -> int:
    failures = 0
    for a in range(L.dim):
        for b in range(L.dim):
            lhs = L.tau_vector(L.bracket_basis(a, b))
            rhs = L.bracket_vectors(L.tau_vector({a: Fraction(1)}), L.tau_vector({b: Fraction(1)}))
            if lhs != rhs:
                failures += 1
    return failures


def check_algebra_identities() -> Tuple[str, str]:
    observed = {}
    for kind, m, n in (("sl", 2, 1), ("gl", 2, 1), ("sl", 1, 2), ("gl", 2, 2)):
        L = build_algebra(kind, m, n)
        observed[L.descriptor] = (_jacobi_failures(L), _grading_failures(L), _tau_failures(L))
    bad = {k: v for k, v in observed.items() if any(v)}
    return "no failures", "no failures" if not bad else f"failures {bad}"


def check_eps_relations() -> Tuple[str, str]:
    values = [check_eps_relation(build_algebra("sl", m, n)) for m, n in ((2, 1), (3, 1), (3, 2), (1, 2))]
    return "True", str(all(values))


def _small_modules(L: LieSuperalgebra):
    yield trivial_module(L)
    yield adjoint_module(L)
    yield natural_module(L)
    yield dual_module(natural_module(L))
    yield tau_twist(adjoint_module(L))
    yield sym_power_eps(natural_module(L), 2)
    yield ext_power_eps(natural_module(L), 2)
    if L.n == 1:
        yield build_V_realization(L)


def check_representations() -> Tuple[str, str]:
    bad = []
    for kind in ("sl", "gl"):
        L = build_algebra(kind, 2, 1)
        for M in _small_modules(L):
            if check_representation(M):
                bad.append(f"{L.descriptor}:{M.descriptor}")
    return "[]", str(bad)


def check_square_zero_all() -> Tuple[str, str]:
    L = build_algebra("sl", 2, 1)
    bad = [M.descriptor for M in _small_modules(L) if not check_square_zero(L, M)]
    return "[]", str(bad)


def check_oracle_equivalence() -> Tuple[str, str]:
    L = build_algebra("sl", 2, 1)
    modules = [trivial_module(L), adjoint_module(L), natural_module(L), build_V_realization(L)]
    flagged = []
    for M in modules:
        for n in (0, 1, 2):
            if cohomology(L, M, n, "both").flagged:
                flagged.append(f"H^{n}({M.descriptor})")
    return "[]", str(flagged)


# ---------------------------------------------------------------------------
# sl(m|1)
# ---------------------------------------------------------------------------

def _h2(kind: str, m: int, n: int, build: Callable[[LieSuperalgebra], object], budget: Optional[Budget] = None) -> int:
    L = build_algebra(kind, m, n)
    return cohomology(L, build(L), 2, "invariant", budget).dim_H


def check_h2_trivial_slm1() -> Tuple[str, str]:
    return "[0, 0, 0]", str([_h2("sl", m, 1, trivial_module) for m in (2, 3, 4)])


def check_trace_form_coboundary() -> Tuple[str, str]:
    """Both readings of the bracket-trace 2-cochain on the trivial module are coboundaries."""
    expected, observed = [], []
    for kind in ("sl", "gl"):
        L = build_algebra(kind, 2, 1)
        K = trivial_module(L)
        for name, build in (("Tr", trace_form_cochain), ("Str", supertrace_form_cochain)):
            expected.append((f"{kind}:{name}", "coboundary"))
            witness = is_coboundary(L, K, build(L, K))
            observed.append((f"{kind}:{name}", "coboundary" if witness is not None else "not_coboundary"))
    return str(expected), str(observed)


def check_invariant_cochains_glm1() -> Tuple[str, str]:
    observed = []
    for m in (2, 3):
        gl = build_algebra("gl", m, 1)
        V = build_V_realization(gl)
        dim = invariant_subcomplex(gl, V, 2).dim
        relation = cocycle_relation_g(gl, V)
        ok = len(relation) == 1 and relation[0][0] == 0 and relation[0][1] + relation[0][2] == 0 and relation[0][1] != 0
        observed.append((dim, ok))
    return str([(3, True), (3, True)]), str(observed)


def check_realization_cohomology() -> Tuple[str, str]:
    budget = Budget(10)
    observed = []
    for m in (2, 3, 4):
        observed.append((_h2("gl", m, 1, build_V_realization, budget), _h2("sl", m, 1, build_V_realization, budget)))
    return str([(1, 0)] * 3), str(observed)


def check_extension() -> Tuple[str, str]:
    return "[True, True]", str([check_extension_theorem(m) for m in (2, 3)])


def check_d_laws() -> Tuple[str, str]:
    L = build_algebra("sl", 3, 1)
    observed = []
    for p in (1, 2):
        values = sorted(d_eigenvalues(simple_module(L, instantiate_family(3, 1, 1, p))))
        observed.append([int(x) for x in values])
    ranges = [d_range_of_U(build_algebra("sl", m, 1)) for m in (2, 3, 4)] + [d_range_of_U(build_algebra("sl", 3, 2))]
    expected = [[1, 2, 3], [2, 3, 4]], [(-2, 2), (-3, 3), (-4, 4), (-6, 6)]
    return str(expected), str((observed, ranges))


def check_realization_cross() -> Tuple[str, str]:
    observed = []
    for m in (2, 3, 4):
        L = build_algebra("sl", m, 1)
        V = build_V_realization(L)
        S = simple_module(L, instantiate_family(m, 1, 1, 1))
        observed.append((
            S.dim == V.dim == 2 ** m - 1,
            weight_multiset(S) == weight_multiset(V),
            decompose_L0(S) == decompose_L0(V),
        ))
    return str([(True, True, True)] * 3), str(observed)


def check_screen_slm1() -> Tuple[str, str]:
    expected, observed = [], []
    for m in (2, 3):
        L = build_algebra("sl", m, 1)
        report = run_screen(L, window=6)
        expected.append(sorted(str(instantiate_family(m, 1, k, p)) for k, p in ((1, 0), (0, 1), (1, 1))))
        observed.append(sorted(report.survivors("d_module")))
    return str(expected), str(observed)


def check_negative_control() -> Tuple[str, str]:
    """Random dominant sl(2|1) weights outside both families: H^2 vanishes."""
    rng = np.random.default_rng(7)
    L = build_algebra("sl", 2, 1)
    pairs = [(a, b) for a in range(-2, 3) for b in range(-2, 3) if a >= b]
    sampled: List[Tuple[Weight, Module]] = []
    for idx in rng.permutation(len(pairs)):
        a, b = pairs[int(idx)]
        w = Weight((a, b, -a - b), 2, 1)
        if family_membership(w) is not None:
            continue
        V = simple_module(L, w)
        if V.dim > NEGATIVE_CONTROL_MAX_DIM:
            logger.debug("negative control: {} has dim {}, not sampled", w, V.dim)
            continue
        sampled.append((w, V))
        if len(sampled) == NEGATIVE_CONTROL_SAMPLES:
            break
    observed = [(str(w), cohomology(L, V, 2, "invariant").dim_H) for w, V in sampled]
    expected = [(str(w), 0) for w, _ in sampled]
    if len(sampled) < NEGATIVE_CONTROL_SAMPLES:
        observed.append(("sampled", len(sampled)))
        expected.append(("sampled", NEGATIVE_CONTROL_SAMPLES))
    return str(expected), str(observed)


# ---------------------------------------------------------------------------
# sl(3|2)
# ---------------------------------------------------------------------------

def check_sl32_structure() -> Tuple[str, str]:
    L = build_algebra("sl", 3, 2)
    wedge = ext_power_eps(adjoint_module(L), 2)
    classes = decompose_L0(wedge)
    kac = []
    for text in ("(0,0,0|0,0)", "(1,0,0|0,-1)", "(1,1,1|-1,-2)"):
        w = Weight.parse(text)
        kac.append(kac_module(L, w).dim == 64 * simple_L0_module(L, w).dim)
    return str((288, 27, [True] * 3)), str((wedge.dim, sum(classes.values()), kac))


def check_sl32_h2() -> Tuple[str, str]:
    L = build_algebra("sl", 3, 2)
    budget = Budget(60)
    observed = []
    for V in (
        simple_module(L, Weight.parse("(1,1,1|-1,-2)")),
        simple_module(L, Weight.parse("(0,-1,-1|1,1)")),
        trivial_module(L),
        adjoint_module(L),
    ):
        observed.append(cohomology(L, V, 2, "invariant", budget).dim_H)
    return str([1, 1, 0, 0]), str(observed)


def check_sl32_screen() -> Tuple[str, str]:
    L = build_algebra("sl", 3, 2)
    report = run_screen(L, window=12, budget=Budget(120))
    refined = [w for w in SL32_KAC_LEVEL if w not in SL32_RULED_OUT]
    expected = (sorted(SL32_KAC_LEVEL), sorted(refined), 6)
    observed = (sorted(report.survivors("dual_closure")), sorted(report.survivors("refined")), report.tau_cases)
    return str(expected), str(observed)


def check_sl32_dual_table() -> Tuple[str, str]:
    L = build_algebra("sl", 3, 2)
    mismatches = []
    weights = [instantiate_family(3, 2, 0, p, q) for p in (2, 3) for q in (2, 3) if q <= p]
    weights += [instantiate_family(3, 2, 1, p, q) for p in (1, 2, 3) for q in (1, 0, -1)]
    for w in weights:
        closed = dual_partner(w)
        if closed != dual_highest_weight(L, w) or dual_partner(closed) != w:
            mismatches.append(str(w))
    return "[]", str(mismatches)


def check_sl32_S2() -> Tuple[str, str]:
    L = build_algebra("sl", 3, 2)
    S = sym_power_eps(adjoint_module(L), 2)
    factors = sorted(str(w) for w in composition_factors(S).elements())
    expected_factors = sorted(["(2,0,0|-1,-1)", "(1,0,0|0,-1)", "(1,1,0|0,-2)", "(0,0,0|0,0)", "(0,0,0|0,0)"])
    report = analyze_W_structure(L)
    budget = Budget(240)
    h = [cohomology(L, S, n, "invariant", budget).dim_H for n in (0, 1, 2)]
    return str((expected_factors, "ok", [1, 0, 0])), str((factors, report.status, h))


CHECKS: Dict[str, Tuple[str, Callable[[], Tuple[str, str]]]] = {
    "algebra_identities": ("core", check_algebra_identities),
    "eps_relation": ("core", check_eps_relations),
    "representation_property": ("core", check_representations),
    "square_zero": ("core", check_square_zero_all),
    "oracle_equivalence": ("core", check_oracle_equivalence),
    "h2_trivial_slm1": ("sl-m1", check_h2_trivial_slm1),
    "trace_form_coboundary": ("sl-m1", check_trace_form_coboundary),
    "invariant_cochains_glm1": ("sl-m1", check_invariant_cochains_glm1),
    "realization_h2": ("sl-m1", check_realization_cohomology),
    "extension_theorem": ("sl-m1", check_extension),
    "d_eigenvalue_laws": ("sl-m1", check_d_laws),
    "realization_cross_check": ("sl-m1", check_realization_cross),
    "screen_slm1": ("sl-m1", check_screen_slm1),
    "negative_control": ("sl-m1", check_negative_control),
    "sl32_structure": ("sl32-light", check_sl32_structure),
    "sl32_h2": ("sl32-light", check_sl32_h2),
    "sl32_screen": ("sl32-heavy", check_sl32_screen),
    "sl32_dual_table": ("sl32-heavy", check_sl32_dual_table),
    "sl32_S2": ("sl32-heavy", check_sl32_S2),
}


def checks_for(suite: str) -> List[str]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return [name for name, (s, _) in CHECKS.items() if suite == "all" or s == suite]


def run_check(name: str, deadline: Optional[float] = None, modular_prepass: bool = True) -> CheckResult:
    """Run one check; a check starting after the deadline (epoch seconds) is skipped."""
    suite, fn = CHECKS[name]
    result = CheckResult(name, suite)
    if deadline is not None and time.time() > deadline:
        result.status = "skipped"
        result.notes.append("budget exhausted before start")
        return result
    set_modular_prepass(modular_prepass)
    started = time.perf_counter()
    try:
        result.expected, result.observed = fn()
        result.status = "ok" if result.expected == result.observed else "mismatch"
    except BudgetExceeded as e:
        result.status = "skipped"
        result.notes.append(str(e))
    except Exception as e:
        logger.exception("check {} raised", name)
        result.status = "error"
        result.notes.append(f"{type(e).__name__}: {e}")
    result.elapsed = time.perf_counter() - started
    if result.status != "ok":
        logger.warning("check {}: {} (expected {}, observed {})", name, result.status, result.expected, result.observed)
    return result


@dataclass
class VerifyReport:
    suite: str
    results: List[CheckResult] = field(default_factory=list)
    settings: Dict[str, object] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        statuses = {r.status for r in self.results}
        if statuses & {"mismatch", "error"}:
            return EXIT_MISMATCH
        if "skipped" in statuses:
            return EXIT_BUDGET
        return EXIT_OK

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "exit_code": self.exit_code,
            "settings": self.settings,
            "results": [r.to_dict() for r in self.results],
        }

    def write(self, out: Path) -> Path:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(self.to_dict(), indent=2))
        tsv = out.with_suffix(".tsv")
        header = "name\tsuite\tstatus\texpected\tobserved\telapsed"
        tsv.write_text("\n".join([header] + [r.tsv_row() for r in self.results]) + "\n")
        return tsv


def verify_paper(
    suite: str = "core",
    jobs: int = 1,
    budget_minutes: Optional[float] = None,
    modular_prepass: bool = True,
    quiet: bool = True,
) -> VerifyReport:
    names = checks_for(suite)
    deadline = time.time() + budget_minutes * 60 if budget_minutes else None
    report = VerifyReport(suite, settings={
        "jobs": jobs,
        "budget_minutes": budget_minutes,
        "modular_prepass": modular_prepass,
        "cache_dir": str(get_settings().cache_dir),
    })
    logger.info("verify suite {}: {} checks, {} job(s)", suite, len(names), jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_check, name, deadline, modular_prepass) for name in names]
            results = [f.result() for f in tqdm(futures, desc=suite, disable=quiet)]
    else:
        results = [run_check(name, deadline, modular_prepass) for name in tqdm(names, desc=suite, disable=quiet)]
    report.results = sorted(results, key=lambda r: r.name)
    logger.info("verify suite {} finished with exit code {}", suite, report.exit_code)
    return report
