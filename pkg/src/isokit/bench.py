"""Benchmark suites: refinement scaling, Luks scaling, an iso corpus and backends.

Every suite takes an integer seed and returns a JSON-ready dict.  Timings are
medians over ``runs`` repetitions; the deterministic fields (verdicts, class
counts) depend only on the seed.
"""

from __future__ import annotations

import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import kernels
from .generators import FIXTURES, random_gnm, random_regular
from .perm import Perm, PermGroup
from .refinement import refine_stable
from .search import iso
from .strings import GString, SIInstance, apply_perm, luks_string_iso

__all__ = ["SUITES", "run_suite", "cr_scaling", "luks_scaling", "iso_corpus", "backend_comparison", "worker_count"]


def worker_count() -> int:
    env = os.environ.get("ISO_ENGINE_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cap))
        except ValueError:
            raise ValueError(f"ISO_ENGINE_THREADS must be an integer, got {env!r}") from None
    return cap


def _median_time(fn, runs):
    times = []
    out = None
    for _ in range(runs):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def _growth(sizes, times):
    ratios = [times[i + 1] / times[i] for i in range(len(times) - 1)]
    slope = float(np.polyfit(np.log(sizes), np.log(times), 1)[0]) if len(sizes) > 1 else None
    geo = float(np.exp(np.mean(np.log(ratios)))) if ratios else None
    return ratios, geo, slope


def cr_scaling(seed=0, exponents=(14, 15, 16, 17), density=10, runs=5, warmup=1):
    """Stable Color Refinement on ``G(n, m)`` with ``m = density·n``."""
    rows = []
    for i, e in enumerate(exponents):
        n = 2 ** e
        g = random_gnm(n, density * n, seed + i)
        for _ in range(warmup):
            refine_stable(g)
        med, col = _median_time(lambda: refine_stable(g), runs)
        rows.append({"n": n, "m": g.m, "median_s": med, "classes": col.num_colors})
    sizes = [r["n"] + r["m"] for r in rows]
    ratios, geo, slope = _growth(sizes, [r["median_s"] for r in rows])
    return {
        "suite": "cr-scaling",
        "backend": kernels.backend_name(),
        "runs": runs,
        "sizes": rows,
        "doubling_ratios": ratios,
        "max_doubling_ratio": max(ratios) if ratios else None,
        "geometric_mean_ratio": geo,
        "fitted_exponent": slope,
    }


def tower_group(levels: int, base: int = 3) -> PermGroup:
    """The iterated wreath product ``S_b ≀ ... ≀ S_b`` on ``b**levels`` points."""
    gens = [Perm.from_cycles(base, (0, 1)), Perm.from_cycles(base, tuple(range(base)))]
    group = PermGroup(base, gens)
    degree = base
    for _ in range(levels - 1):
        new_degree = degree * base
        new_gens = []
        # copy of the lower group acting on the first block
        for g in group.generators:
            new_gens.append(Perm(list(g) + list(range(degree, new_degree))))
        # permute the blocks
        for s in gens:
            new_gens.append(Perm(s[i // degree] * degree + i % degree for i in range(new_degree)))
        group = PermGroup(new_degree, new_gens)
        degree = new_degree
    return group


def _brute_nonempty(inst: SIInstance) -> bool:
    x, y = inst.x.values, inst.y.values
    for g in inst.group.elements():
        if all(x[a] == y[g[a]] for a in inst.window):
            return True
    return False


def luks_scaling(seed=0, levels=(1, 2, 3), runs=3, instances=4):
    """Luks on tower groups in Γ_3: half isomorphic pairs, half perturbed."""
    rng = np.random.default_rng(seed)
    rows = []
    all_correct = True
    for lv in levels:
        group = tower_group(lv)
        n = group.degree
        cases = []
        for j in range(instances):
            x = GString.from_values(rng.integers(0, 2, n).tolist(), 2)
            y = apply_perm(x, group.random_element(rng))
            expect = True
            if j % 2 == 1:
                vals = list(y.values)
                vals[int(rng.integers(n))] ^= 1  # changes the symbol count: never isomorphic
                y = GString(tuple(vals), y.alphabet)
                expect = False
            cases.append((SIInstance(x, y, group), expect))
        verdicts = []
        t_all = []
        for inst, expect in cases:
            med, coset = _median_time(lambda: luks_string_iso(inst), runs)
            t_all.append(med)
            got = not coset.is_empty
            ok = got == expect
            if lv == levels[0]:
                ok = ok and got == _brute_nonempty(inst)
            all_correct = all_correct and ok
            verdicts.append(got)
        rows.append({"levels": lv, "degree": n, "median_s": statistics.median(t_all), "verdicts": verdicts})
    return {"suite": "luks-scaling", "runs": runs, "sizes": rows, "all_correct": all_correct}


def _iso_cases(seed):
    rng = np.random.default_rng(seed)
    cases = []
    for name, make in sorted(FIXTURES.items()):
        g = make()
        perm = rng.permutation(g.n).tolist()
        cases.append((f"{name}~relabel", g, g.relabel(perm), True))
    cases.append(("shrikhande-vs-rook44", FIXTURES["shrikhande"](), FIXTURES["rook44"](), False))
    cases.append(("cycle6-vs-two-triangles", FIXTURES["cycle6"](), FIXTURES["two-triangles"](), False))
    for i in range(4):
        g = random_regular(40, 3, seed * 100 + i)
        cases.append((f"regular40-{i}~relabel", g, g.relabel(rng.permutation(40).tolist()), True))
    return cases


def iso_corpus(seed=0, runs=1):
    cases = _iso_cases(seed)

    def work(case):
        name, g, h, expect = case
        med, res = _median_time(lambda: iso(g, h), runs)
        return {
            "name": name,
            "n": g.n,
            "median_s": med,
            "verdict": res.verdict,
            "correct": res.isomorphic == expect,
            "aut_order": res.aut_order,
        }

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        rows = list(pool.map(work, cases))
    return {"suite": "iso-corpus", "runs": runs, "cases": rows, "all_correct": all(r["correct"] for r in rows)}


def backend_comparison(seed=0, exponents=(10, 12, 14), density=10, runs=3):
    """Compiled vs pure-Python refinement kernels on the same graphs."""
    rows = []
    prev = kernels.backend_name()
    try:
        for i, e in enumerate(exponents):
            n = 2 ** e
            g = random_gnm(n, density * n, seed + i)
            row = {"n": n, "m": g.m}
            results = {}
            for name in kernels.available_backends():
                kernels.use_backend(name)
                med, col = _median_time(lambda: refine_stable(g), runs)
                row[f"{name}_s"] = med
                results[name] = col
            vals = list(results.values())
            row["agree"] = all(np.array_equal(v.colors, vals[0].colors) for v in vals)
            if "cython" in results:
                row["speedup"] = row["python_s"] / row["cython_s"]
            rows.append(row)
    finally:
        kernels.use_backend(prev)
    return {"suite": "backends", "backends": kernels.available_backends(), "runs": runs, "sizes": rows}


SUITES = {
    "cr-scaling": cr_scaling,
    "luks-scaling": luks_scaling,
    "iso-corpus": iso_corpus,
    "backends": backend_comparison,
}


def run_suite(name, seed=0, **options):
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed=seed, **options)
