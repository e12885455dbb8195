"""Acceptance criteria; each test prints one PASS/FAIL line."""

import itertools
import json
import math
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from corpus import over_threshold, planted, planted_size, random_decomposition, small_corpus, threshold_graph
from dragonforest import cli
from dragonforest.density import chi, component_bound, fractional_arboricity, ParameterError
from dragonforest.engine import EngineInvariantError, can_exchange, improve, perform_exchange, reroot, run
from dragonforest.engine.exchange import ExchangeError
from dragonforest.graph import Decomposition, MultiGraph, OrientedTree, format_graph_text, red_components, validate
from dragonforest.oracles import brute_force_fractional_arboricity
from dragonforest.packing import InsufficientForestsError, nash_williams_decompose
from dragonforest.planar import dual_graph, edge_connectivity, girth, girth5_decompose, thin_tree

from solids import dodecahedron, icosahedron, petersen

PAIRS = [(1, 1), (2, 1), (2, 2), (2, 3), (1, 4), (1, 5), (2, 7)]
CORPUS_SIZE = 2000
RUNS_PER_PAIR = 500
PLANTED_PER_PAIR = 40


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} [{number}] {title}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    return small_corpus(seed=20240611, count=CORPUS_SIZE, max_n=6, max_extra=9)


def test_1_density_oracle(corpus):
    start = time.perf_counter()
    bad = [g for g in corpus if fractional_arboricity(g) != brute_force_fractional_arboricity(g)]
    elapsed = time.perf_counter() - start
    parallel = sum(1 for g in corpus if len({frozenset(e) for e in g.edges}) < g.m)
    report(1, "density equals brute force", not bad and elapsed < 60 and len(corpus) >= 2000,
           f"{len(corpus)} graphs ({parallel} with parallel edges), {len(bad)} mismatches, {elapsed:.1f}s")


def as_validated_forests(g, forests):
    trees = tuple(OrientedTree.from_edges(g, f, 0) for f in forests)
    return validate(Decomposition(g, trees, frozenset()), require_spanning=False)


def test_2_nash_williams(corpus):
    start = time.perf_counter()
    failures = 0
    successes = 0
    for g in corpus:
        need = math.ceil(fractional_arboricity(g))
        for k in (1, 2, 3):
            try:
                forests = nash_williams_decompose(g, k)
            except InsufficientForestsError:
                failures += k >= need
                continue
            successes += 1
            failures += k < need or not as_validated_forests(g, forests)
    elapsed = time.perf_counter() - start
    report(2, "Nash-Williams biconditional k=1,2,3", failures == 0 and elapsed < 60,
           f"{len(corpus) * 3} cases, {successes} validated decompositions, {failures} violations, {elapsed:.1f}s")


def monotone(trace) -> bool:
    """Every move lowers the potential and the residue part never rises between moves."""
    for a, b in zip(trace, trace[1:]):
        if b.before.rho.counts > a.after.rho.counts:
            return False
    return all(e.after < e.before for e in trace)


@pytest.fixture(scope="module")
def engine_runs():
    out = {}
    for k, d in PAIRS:
        rng = random.Random(7919 * k + d)
        results = []
        for _ in range(RUNS_PER_PAIR):
            g = threshold_graph(rng, k, d, 3, 10)
            results.append(("run", g, run(g, k, d)))
        n = planted_size(k, d)
        made = 0
        while made < PLANTED_PER_PAIR:
            dec = planted(rng, k, d, rng.randint(n, n + 5))
            if dec is None:
                continue
            made += 1
            results.append(("planted", dec.graph, improve(dec, k, d)))
        for _ in range(PLANTED_PER_PAIR):
            g = threshold_graph(rng, k, d, 5, 10)
            dec = random_decomposition(rng, g, k, attempts=20)
            if dec is not None:
                results.append(("random-start", g, improve(reroot(dec, 0), k, d)))
        out[(k, d)] = results
    return out


def test_3_success_below_threshold(engine_runs):
    parts = []
    ok = True
    for (k, d), results in engine_runs.items():
        limit = k + chi(k, d)
        stuck = sum(1 for _, _, r in results if not r.ok)
        invalid = sum(1 for _, _, r in results
                      if r.ok and not validate(r.decomposition, require_spanning=False, bound=d))
        over = sum(1 for _, g, _ in results if fractional_arboricity(g) > limit)
        runs = sum(1 for kind, _, _ in results if kind == "run")
        ok &= stuck == 0 and invalid == 0 and over == 0 and runs >= 500
        parts.append(f"({k},{d}) {len(results)} runs stuck={stuck} invalid={invalid}")
    report(3, "engine succeeds below the density threshold", ok, "; ".join(parts))


def test_4_petersen_cli(tmp_path, capsys):
    f = tmp_path / "petersen.txt"
    f.write_text(format_graph_text(petersen()))
    code = cli.main(["sndt", str(f), "--k", "1", "--d", "4"])
    data = json.loads(capsys.readouterr().out)
    k, d = 1, 4
    bound = d + math.ceil(Fraction(k * d, k + 1)) - k
    ok = code == 0 and bound == 5 and data["d"] == 5 and data["max_red_component_edges"] <= 5
    ok &= cli.check_decomposition(petersen(), data) is None
    report(4, "Petersen via sndt --k 1 --d 4", ok,
           f"exit {code}, largest bounded component {data['max_red_component_edges']} <= {bound}")


def test_5_icosahedron_thin_tree():
    eg = icosahedron()
    g = eg.graph
    start = time.perf_counter()
    cert = thin_tree(eg)
    elapsed = time.perf_counter() - start
    in_tree = set(cert.tree)
    worst = Fraction(0)
    cuts = 0
    for mask in range(1 << (g.n - 1)):
        side = {0} | {v for v in range(1, g.n) if mask >> (v - 1) & 1}
        if len(side) == g.n:
            continue
        cut = [e for e, (a, b) in enumerate(g.edges) if (a in side) != (b in side)]
        cuts += 1
        worst = max(worst, Fraction(sum(e in in_tree for e in cut), len(cut)))
    lam = edge_connectivity(g)
    dual_girth = girth(dual_graph(eg).dual)
    ok = (g.n, g.m) == (12, 30) and len(cert.tree) == 11 and worst == cert.max_ratio <= Fraction(5, 6)
    ok &= elapsed < 10 and lam == 5 and dual_girth == 5 and cuts == 2 ** 11 - 1
    report(5, "icosahedron thin tree", ok,
           f"max ratio {worst} over {cuts} bipartitions, lambda={lam}, dual girth={dual_girth}, {elapsed:.2f}s")


def test_6_girth_five_decompositions():
    details = []
    ok = True
    for name, g in (("dodecahedron", dodecahedron().graph), ("Petersen", petersen())):
        dec = girth5_decompose(g, debug=True)
        largest = max((c.edge_count for c in red_components(dec)), default=0)
        good = len(dec.blue) == 1 and bool(validate(dec, bound=5))
        ok &= good
        details.append(f"{name} largest bounded component {largest}")
    report(6, "girth-5 graphs split into a tree and a 5-bounded forest", ok, ", ".join(details))


def _red_acyclic(g, red):
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in red:
        a, b = find(g.edges[e][0]), find(g.edges[e][1])
        if a == b:
            return False
        parent[a] = b
    return True


def _reaches_root(t):
    for v in range(t.n):
        seen = 0
        while t.parent[v] >= 0 and seen <= t.n:
            v = t.parent[v]
            seen += 1
        if v != t.root:
            return False
    return True


def test_7_exchange_invariants():
    rng = random.Random(4242)
    applied = violations = refused = 0
    while applied < 10_000:
        n = rng.randint(3, 10)
        g = threshold_graph(rng, rng.randint(1, 2), 3, n, n) if rng.random() < 0.5 else None
        if g is None:
            edges = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(n, 3 * n))]
            edges += [(i, rng.randrange(i)) for i in range(1, n)]
            g = MultiGraph(n, tuple(edges))
        dec = random_decomposition(rng, g, rng.randint(1, 2), attempts=5)
        if dec is None or not dec.red:
            continue
        dec = reroot(dec, rng.randrange(n))
        for _ in range(30):
            i = rng.randrange(dec.k)
            u = rng.randrange(n)
            e = rng.choice(sorted(dec.red))
            t = dec.blue[i]
            if not can_exchange(t, u, g, e):
                continue
            legal = _red_acyclic(g, (dec.red - {e}) | {t.parent_edge[u]})
            try:
                out = perform_exchange(dec, i, u, e)
            except ExchangeError:
                refused += 1
                violations += legal
                continue
            violations += not legal
            applied += 1
            spanning = all(s.is_spanning() for s in out.blue)
            if not (validate(out) and spanning and all(_reaches_root(s) for s in out.blue)):
                violations += 1
            dec = out
    report(7, "random exchanges keep trees spanning, red acyclic, all paths to r", violations == 0,
           f"{applied} exchanges applied, {refused} cycle-closing swaps refused, {violations} violations")


def test_8_monotone_and_terminating(engine_runs):
    moves = Counter()
    bad = 0
    total = 0
    for results in engine_runs.values():
        for _, _, r in results:
            moves.update(r.move_counts)
            total += len(r.trace)
            bad += not monotone(r.trace)
    counts = ", ".join(f"{fam}={c}" for fam, c in sorted(moves.items()))
    report(8, "potential strictly decreases, no repeated state", bad == 0,
           f"{total} accepted moves ({counts}), {bad} non-monotone runs")


def test_9_stuck_certificates():
    rng = random.Random(99)
    stuck = 0
    errors = []
    checked = 0
    cases = [(MultiGraph(4, tuple(itertools.combinations(range(4), 2))), 1, d) for d in (1, 2, 4)]
    for k, d in PAIRS:
        n = max(4, planted_size(k, d))
        for bumps in (2, 4, 6):
            for _ in range(12):
                g = over_threshold(rng, k, d, rng.randint(n, n + 3), bumps)
                if g is not None:
                    cases.append((g, k, d))
    for g, k, d in cases:
        checked += 1
        try:
            res = run(g, k, d, debug=True)
        except (EngineInvariantError, AssertionError) as exc:
            errors.append(f"({k},{d}) {exc}")
            continue
        if not res.ok:
            stuck += 1
            if not res.certificate.density > chi(k, d):
                errors.append(f"({k},{d}) certificate density {res.certificate.density}")
    report(9, "stuck states certify density above chi", not errors and stuck > 0,
           f"{checked} hypothesis-violating runs, {stuck} stuck, {len(errors)} assertion failures")


def test_10_formula_table():
    ok = chi(1, 5) == Fraction(2, 3) and component_bound(1, 4) == 5
    rows = 0
    for k in range(1, 8):
        for d in range(1, 3 * (k + 1)):
            c = chi(k, d)
            rows += 1
            ok &= c <= Fraction(d, d + k + 1)
            if d <= k + 1:
                ok &= c == Fraction(d, d + k + 1) and 0 <= c <= Fraction(1, 2)
            else:
                ok &= Fraction(1, 2) < c <= Fraction(2, 3)
        for bad_d in (0, 3 * (k + 1)):
            try:
                chi(k, bad_d)
                ok = False
            except ParameterError:
                pass
        for d in range(1, 2 * (k + 1) + 1):
            b = component_bound(k, d)
            ok &= b == (d if d <= k + 1 else d + math.ceil(Fraction(k * d, k + 1)) - k)
            ok &= b <= k + 1 or k + 1 < b < 3 * (k + 1)
    report(10, "chi and component bound formulas", ok,
           f"{rows} (k,d) rows, chi(1,5)={chi(1, 5)}, bound(1,4)={component_bound(1, 4)}")
