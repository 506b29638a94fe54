"""
Screening of candidate highest weights for simple subquotients of U(L)
with possibly nonzero H^2, for sl(m|1) and sl(3|2).

Stages only ever remove weights:
  window families -> weight-level D screen -> Kac screen -> dual closure
  -> module-level D screen -> refined (simple module) screen.
"""
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from loguru import logger
from tqdm import tqdm

from cohom_algebra import LieSuperalgebra, Weight, d_value, odd_parts
from cohom_config import DEFAULT_WINDOW, Budget, BudgetExceeded, ModuleError
from cohom_modules import (
    Module,
    adjoint_module,
    d_eigenvalues,
    dual_module,
    ext_power_eps,
    simple_module,
    singular_vectors,
)
from cohom_structure import decompose_L0, kac_L0_classes


@dataclass(frozen=True)
class FamilyRecord:
    algebra: str
    family: int
    p: int
    q: int = 0

    def __str__(self) -> str:
        return f"{self.algebra} family ({self.family}) p={self.p} q={self.q}"


def _shape(L_or_weight) -> Tuple[int, int]:
    return L_or_weight.m, L_or_weight.n


def _descriptor(m: int, n: int) -> str:
    return f"sl:{m}:{n}"


def instantiate_family(m: int, n: int, family: int, p: int, q: int = 0) -> Weight:
    """The family pattern with the given parameters (constraints are checked)."""
    if n == 1:
        if family == 0:
            if p < 1:
                raise ModuleError("family (0) needs p >= 1")
            return Weight((p,) + (1,) * (m - 1) + (-p - (m - 1),), m, 1)
        if family == 1:
            if p < 0:
                raise ModuleError("family (1) needs q >= 0")
            return Weight((0,) * (m - 1) + (-p, p), m, 1)
    elif (m, n) == (3, 2):
        if family == 0:
            if not p >= q >= 2:
                raise ModuleError("family (0) needs p >= q >= 2")
            return Weight((p, q, 2, -q - 1, -p - 1), 3, 2)
        if family == 1:
            if not p >= 1 >= q:
                raise ModuleError("family (1) needs p >= 1 >= q")
            return Weight((p, 1, q, -q, -p - 1), 3, 2)
        if family == 2:
            if not 0 >= p >= q:
                raise ModuleError("family (2) needs 0 >= p >= q")
            return Weight((0, p, q, -q, -p), 3, 2)
    raise ModuleError(f"no family ({family}) for sl({m}|{n})")


def family_membership(weight: Weight) -> Optional[FamilyRecord]:
    """Match a weight against the closed-form families of its algebra."""
    if not weight.is_integral():
        raise ModuleError(f"{weight} is not integral")
    if weight.label_sum() != 0:
        raise ModuleError(f"{weight} does not have label sum zero")
    m, n = _shape(weight)
    L = [int(x) for x in weight.labels]
    name = _descriptor(m, n)
    if n == 1:
        p = L[0]
        if p >= 1 and all(x == 1 for x in L[1:m]) and L[m] == -p - (m - 1):
            return FamilyRecord(name, 0, p)
        q = L[m]
        if q >= 0 and all(x == 0 for x in L[:m - 1]) and L[m - 1] == -q:
            return FamilyRecord(name, 1, q)
        return None
    if (m, n) == (3, 2):
        a, b, c, d, e = L
        if c == 2 and a >= b >= 2 and d == -b - 1 and e == -a - 1:
            return FamilyRecord(name, 0, a, b)
        if b == 1 and a >= 1 >= c and d == -c and e == -a - 1:
            return FamilyRecord(name, 1, a, c)
        if a == 0 and 0 >= b >= c and d == -c and e == -b:
            return FamilyRecord(name, 2, b, c)
    return None


def family_weights(m: int, n: int, window: int = DEFAULT_WINDOW) -> List[Weight]:
    """All family weights with parameters bounded by the window."""
    out: List[Weight] = []
    if n == 1:
        out += [instantiate_family(m, 1, 0, p) for p in range(1, window + 1)]
        out += [instantiate_family(m, 1, 1, q) for q in range(0, window + 1)]
    elif (m, n) == (3, 2):
        out += [instantiate_family(3, 2, 0, p, q) for p in range(2, window + 1) for q in range(2, p + 1)]
        out += [instantiate_family(3, 2, 1, p, q) for p in range(1, window + 1) for q in range(-window, 2)]
        out += [instantiate_family(3, 2, 2, p, q) for p in range(-window, 1) for q in range(-window, p + 1)]
    else:
        raise ModuleError(f"no weight families are known for sl({m}|{n})")
    return out


def lambda_of_D(L: LieSuperalgebra, weight: Weight) -> Fraction:
    return d_value(L, weight)


def d_range_of_U(L: LieSuperalgebra) -> Tuple[int, int]:
    """D-eigenvalues on U(L) ≅ S(L, ε): each odd generator contributes at most once."""
    minus, plus = odd_parts(L)
    return -len(minus), len(plus)


def d_screen(L: LieSuperalgebra, weight: Weight, level: str = "weight",
             module: Optional[Module] = None) -> Tuple[bool, List[Fraction]]:
    """D-eigenvalues must lie inside the range found on U(L)."""
    lo, hi = d_range_of_U(L)
    if level == "weight":
        values = [lambda_of_D(L, weight)]
    elif level == "module":
        module = module or simple_module(L, weight)
        values = sorted(d_eigenvalues(module))
    else:
        raise ModuleError(f"unknown D-screen level {level!r}")
    outside = [x for x in values if not lo <= x <= hi]
    return not outside, outside or values


def adjoint_wedge_classes(L: LieSuperalgebra) -> Counter:
    """L0-constituents of Λ^2_ε(L)."""
    return decompose_L0(ext_power_eps(adjoint_module(L), 2))


def kac_common_constituent_screen(L: LieSuperalgebra, weight: Weight,
                                  reference: Optional[Counter] = None) -> bool:
    reference = reference if reference is not None else adjoint_wedge_classes(L)
    return bool(set(kac_L0_classes(L, weight)) & set(reference))


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

def dual_partner(weight: Weight) -> Optional[Weight]:
    """Highest weight of V(Λ)* for sl(3|2) family weights, by closed forms."""
    record = family_membership(weight)
    if record is None or (weight.m, weight.n) != (3, 2):
        return None
    k, p, q = record.family, record.p, record.q
    if k == 0:
        if p > q:
            return Weight((0, 1 - q, 1 - p, p - 1, q - 1), 3, 2)
        return Weight((0, -p, -p, p, p), 3, 2)
    if k == 1:
        if q < 1:
            return Weight((1 - q, 1, 1 - p, p - 1, q - 2), 3, 2)
        if p >= 2:
            return Weight((0, 0, 1 - p, p - 1, 0), 3, 2)
        return Weight((0, -1, -1, 1, 1), 3, 2)
    # family (2) weights (0, a, b | -b, -a)
    a, b = p, q
    if a == 0 and b == 0:
        return weight
    if a == 0:
        return Weight((1 - b, 1, 1, -1, b - 2), 3, 2)
    if a == b == -1:
        return Weight((1, 1, 1, -1, -2), 3, 2)
    if a == b:
        return Weight((-a, -a, 2, a - 1, a - 1), 3, 2)
    return Weight((1 - b, 1 - a, 2, a - 2, b - 2), 3, 2)


def dual_highest_weight(L: LieSuperalgebra, weight: Weight, module: Optional[Module] = None) -> Weight:
    """Highest weight of the dual of V(Λ), read off the constructed module."""
    V = module or simple_module(L, weight)
    found = singular_vectors(dual_module(V), "L")
    return max(w for w, _ in found)


def dual_closure_filter(weights: Iterable[Weight],
                        partner: Callable[[Weight], Optional[Weight]] = dual_partner) -> List[Weight]:
    """Keep the weights whose dual partner is also present."""
    pool = list(weights)
    present = set(pool)
    kept = []
    for w in pool:
        other = partner(w)
        if other is not None and other in present:
            kept.append(w)
        elif other is None:
            logger.warning("no dual partner known for {}; dropped", w)
    return kept


def tau_reduced_cases(weights: Iterable[Weight],
                      partner: Callable[[Weight], Optional[Weight]] = dual_partner) -> int:
    """Number of orbits of the dual map (τ identifies a module with its dual)."""
    seen = set()
    orbits = 0
    for w in weights:
        if w in seen:
            continue
        orbits += 1
        seen.add(w)
        other = partner(w)
        if other is not None:
            seen.add(other)
    return orbits


# ---------------------------------------------------------------------------
# The pipeline
# ---------------------------------------------------------------------------

@dataclass
class ScreenReport:
    algebra: str
    window: int
    d_range: Tuple[int, int]
    stages: Dict[str, List[str]] = field(default_factory=dict)
    verdicts: Dict[str, Dict[str, object]] = field(default_factory=dict)
    tau_cases: int = 0
    timings: Dict[str, float] = field(default_factory=dict)
    status: str = "ok"

    def survivors(self, stage: str) -> List[str]:
        return self.stages.get(stage, [])

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "window": self.window,
            "d_range": list(self.d_range),
            "stages": self.stages,
            "verdicts": self.verdicts,
            "tau_cases": self.tau_cases,
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
            "status": self.status,
        }


def run_screen(
    L: LieSuperalgebra,
    window: int = DEFAULT_WINDOW,
    budget: Optional[Budget] = None,
    quiet: bool = True,
    module_source: Optional[Callable[[LieSuperalgebra, Weight], Module]] = None,
) -> ScreenReport:
    """Run every stage; `module_source` lets callers supply cached simple modules."""
    budget = budget or Budget()
    build = module_source or simple_module
    report = ScreenReport(L.descriptor, window, d_range_of_U(L))
    verdicts = report.verdicts

    def note(w: Weight, key: str, value) -> None:
        verdicts.setdefault(str(w), {})[key] = value

    def stage(name: str, weights: List[Weight], started: float) -> List[Weight]:
        report.stages[name] = [str(w) for w in weights]
        report.timings[name] = time.perf_counter() - started
        logger.info("{} screen, stage {}: {} weights", L.descriptor, name, len(weights))
        return weights

    t = time.perf_counter()
    current = stage("families", family_weights(L.m, L.n, window), t)
    for w in current:
        note(w, "family", str(family_membership(w)))
        note(w, "lambda_D", str(lambda_of_D(L, w)))

    t = time.perf_counter()
    kept = []
    for w in current:
        ok, _ = d_screen(L, w, "weight")
        note(w, "d_weight", ok)
        if ok:
            kept.append(w)
    current = stage("d_weight", kept, t)

    sl32 = (L.m, L.n) == (3, 2)
    if sl32:
        budget.check("Kac screen")
        t = time.perf_counter()
        reference = adjoint_wedge_classes(L)
        kept = []
        for w in tqdm(current, desc="Kac screen", disable=quiet):
            ok = kac_common_constituent_screen(L, w, reference)
            note(w, "kac", ok)
            if ok:
                kept.append(w)
        current = stage("kac", kept, t)

        t = time.perf_counter()
        current = dual_closure_filter(current)
        for w in current:
            note(w, "dual", str(dual_partner(w)))
        current = stage("dual_closure", current, t)

    modules: Dict[Weight, Module] = {}
    t = time.perf_counter()
    kept = []
    for w in tqdm(current, desc="module D screen", disable=quiet):
        try:
            budget.check(f"module D screen of {w}")
        except BudgetExceeded:
            report.status = "budget_exceeded"
            note(w, "d_module", "skipped")
            continue
        modules[w] = build(L, w)
        ok, values = d_screen(L, w, "module", modules[w])
        note(w, "d_module", ok)
        note(w, "d_values", [str(x) for x in values])
        if ok:
            kept.append(w)
    current = stage("d_module", kept, t)

    if sl32:
        t = time.perf_counter()
        kept = []
        for w in tqdm(current, desc="refined screen", disable=quiet):
            classes = decompose_L0(modules[w])
            ok = bool(set(classes) & set(reference))
            note(w, "refined", ok)
            note(w, "unique_L0_decomposition", all(k == 1 for k in classes.values()))
            if ok:
                kept.append(w)
        current = stage("refined", kept, t)
        report.tau_cases = tau_reduced_cases(current)
    else:
        partners = {w: dual_highest_weight(L, w, modules[w]) for w in current}
        for w, other in partners.items():
            note(w, "dual", str(other))
        report.tau_cases = tau_reduced_cases(current, partners.get)
    return report
