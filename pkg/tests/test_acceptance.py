"""Acceptance suite: eleven end-to-end criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import io
import random
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from bianchi import (BianchiType, Bracket, FieldMode, GaussianRational, SymForm, Tr_embed,
                     act_bracket, act_covector, act_sym, classify, compose, derived_algebra_dim,
                     invariant_c, j_embed, jacobian_tensor, lam, orbit_dimension, p_project,
                     rank_signature, representative, stabilizer_dimension, trace_map, witness)
from bianchi.canon import residual
from bianchi.cli import main as cli_main, parse_bracket_text
from bianchi.orbits import UNION_VI, UNION_VII, closure_poset, closure_set, node_dimension
from bianchi.sampling import (random_covector, random_group_element, random_scalar,
                              random_symform, random_bracket)

REAL = FieldMode.REAL
COMPLEX = FieldMode.COMPLEX
HALF = Fraction(1, 2)

RESULTS = []


def record(number, title):
    """Decorator: run the criterion, record PASS/FAIL and re-raise failures."""
    def wrap(fn):
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
            except BaseException as exc:
                line = f"FAIL criterion {number:2d}: {title} ({type(exc).__name__}: {exc})"
                RESULTS.append(line)
                print(line)
                raise
            line = f"PASS criterion {number:2d}: {title} [{time.perf_counter() - start:.2f}s] {detail}".rstrip()
            RESULTS.append(line)
            print(line)
        run.__name__ = fn.__name__
        return run
    return wrap


def _types_with_params():
    out = [BianchiType(x) for x in ("I", "II", "IV", "V", "VI0", "VII0", "VIII", "IX")]
    out += [BianchiType("VIh", h2) for h2 in (Fraction(1), Fraction(4), Fraction(9, 2), Fraction(2))]
    out += [BianchiType("VIIh", h2) for h2 in (Fraction(1), Fraction(9), Fraction(1, 4), Fraction(2))]
    return out


@record(1, "identity suite on 1000 random inputs, exact, < 5 s")
def test_criterion_01_identities():
    rng = random.Random(1)
    start = time.perf_counter()
    for _ in range(1000):
        alpha = random_covector(rng, 100)
        A = random_symform(rng, 100)
        C = random_bracket(rng, 100)
        assert trace_map(j_embed(alpha)) == alpha.scale(-2)
        assert p_project(j_embed(alpha)) == SymForm.zero()
        assert trace_map(Tr_embed(A)).is_zero()
        assert p_project(Tr_embed(A)) == A.scale(2)
        assert Tr_embed(p_project(C)).scale(HALF) - j_embed(trace_map(C)).scale(HALF) == C
    elapsed = time.perf_counter() - start
    assert elapsed < 5, f"took {elapsed:.2f}s"


@record(2, "J = 2 A nu on 1000 random (M, nu), exact")
def test_criterion_02_jacobian_formula():
    rng = random.Random(2)
    for _ in range(1000):
        A = random_symform(rng, 100)
        nu = random_covector(rng, 100)
        J = jacobian_tensor(compose(A, nu))
        assert J.comps == tuple(2 * sum((A[i, j] * nu[j] for j in range(3)), Fraction(0))
                                for i in range(3))


@record(3, "normal-form table and A-class (rank, |sig|) map, exact")
def test_criterion_03_table():
    def fam(sign, h):
        # [e2,e3] = e1 - h e2, [e3,e1] = h e1 + sign e2
        return Bracket.from_products(e23=(1, -h, 0), e31=(h, sign, 0))

    table = [
        (Bracket.zero(), BianchiType("I")),
        (Bracket.from_products(e23=(1, 0, 0)), BianchiType("II")),
        (Bracket.from_products(e23=(1, -1, 0), e31=(1, 0, 0)), BianchiType("IV")),
        # the j(lambda^3) part: [e2,e3] = -e2, [e3,e1] = e1
        (Bracket.from_products(e23=(0, -1, 0), e31=(1, 0, 0)), BianchiType("V")),
        (fam(-1, -1), BianchiType("VIh", 1)),
        (fam(-1, -2), BianchiType("VIh", 4)),
        (fam(1, 1), BianchiType("VIIh", 1)),
        (fam(1, 3), BianchiType("VIIh", 9)),
        (Bracket.from_products(e12=(0, 0, -1), e23=(1, 0, 0), e31=(0, 1, 0)), BianchiType("VIII")),
        (Bracket.from_products(e12=(0, 0, 1), e23=(1, 0, 0), e31=(0, 1, 0)), BianchiType("IX")),
    ]
    for C, t in table:
        assert classify(C).type == t, (C, t)
    a_class = {(0, 0, 0): ("I", (0, 0)), (1, 0, 0): ("II", (1, 1)), (1, -1, 0): ("VI0", (2, 0)),
               (1, 1, 0): ("VII0", (2, 2)), (1, 1, -1): ("VIII", (3, 1)), (1, 1, 1): ("IX", (3, 3))}
    for diag, (label, rs) in a_class.items():
        A = SymForm.diag(*diag)
        got = rank_signature(A)
        assert (got.rank, got.abs_signature) == rs
        assert classify(Tr_embed(A)).type.label == label


ORBIT = {"I": 0, "II": 3, "IV": 5, "V": 3, "VIh": 5, "VI0": 5, "VIIh": 5, "VII0": 5, "VIII": 6, "IX": 6}
STAB = {"I": 9, "II": 6, "IV": 4, "V": 6, "VIh": 4, "VI0": 4, "VIIh": 4, "VII0": 4, "VIII": 3, "IX": 3}


@record(4, "orbit dimensions of all representatives, exact, < 1 s")
def test_criterion_04_orbit_dimensions():
    start = time.perf_counter()
    for t in _types_with_params():
        assert orbit_dimension(representative(t)) == ORBIT[t.label], t
    elapsed = time.perf_counter() - start
    assert elapsed < 1, f"took {elapsed:.2f}s"


@record(5, "stabilizer dimensions 9 - orbit_dim, exact")
def test_criterion_05_stabilizer_dimensions():
    for t in _types_with_params():
        C = representative(t)
        assert stabilizer_dimension(C) == 9 - orbit_dimension(C) == STAB[t.label], t
        assert classify(C).aut.dimension == STAB[t.label]


def _cli_samples(label, h2, seed, count, complex_mode=False):
    argv = ["sample", label, "--seed", str(seed), "--count", str(count)]
    if h2 is not None:
        argv += ["--h2", str(h2)]
    if complex_mode:
        argv.append("--complex")
    buf = io.StringIO()
    with redirect_stdout(buf):
        assert cli_main(argv) == 0
    return [parse_bracket_text(line)[0] for line in buf.getvalue().splitlines()]


@record(6, "classification invariant on 500 sampled (g, C) pairs, exact")
def test_criterion_06_invariance():
    rng = random.Random(6)
    specs = [("I", None), ("II", None), ("IV", None), ("V", None), ("VI0", None), ("VII0", None),
             ("VIII", None), ("IX", None), ("VIh", "9/2"), ("VIIh", "2")]
    pairs = 0
    for n, (label, h2) in enumerate(specs):
        for C in _cli_samples(label, h2, seed=100 + n, count=50):
            g = random_group_element(rng, 100)
            assert classify(act_bracket(g, C)).invariant_fields() == classify(C).invariant_fields()
            pairs += 1
    assert pairs == 500
    return f"({pairs} pairs)"


@record(7, "invariant c on 500 triples; h^2 separates VI_h orbits, exact")
def test_criterion_07_invariant_c():
    rng = random.Random(7)
    for _ in range(500):
        sign = rng.choice([1, -1])
        mu = [random_scalar(rng, 20) or Fraction(1) for _ in range(2)]
        h = random_scalar(rng, 20) or Fraction(1)
        g0 = random_group_element(rng, 10)
        A = act_sym(g0, SymForm.diag(mu[0], sign * mu[1], 0))
        nu = act_covector(g0, lam(3, h))
        g = random_group_element(rng, 100)
        assert invariant_c(act_sym(g, A), act_covector(g, nu)) == invariant_c(A, nu)
    values = [Fraction(1, 4), Fraction(1), Fraction(2), Fraction(4), Fraction(9, 2)]
    reports = []
    for h2 in values:
        t = BianchiType("VIh", h2)
        moved = act_bracket(random_group_element(rng, 10), representative(t))
        r = classify(moved)
        assert r.type == t and r.h_squared == h2
        reports.append(r.invariant_fields())
    assert len(set(reports)) == len(values)


@record(8, "200 same-orbit witnesses <= 1e-9, 50 cross-type absent, < 10 s")
def test_criterion_08_witnesses():
    rng = random.Random(8)
    types = _types_with_params()
    start = time.perf_counter()
    worst = 0.0
    for n in range(200):
        t = types[n % len(types)]
        rep = representative(t)
        C1 = act_bracket(random_group_element(rng, 10), rep)
        C2 = act_bracket(random_group_element(rng, 10), rep)
        w = witness(C1, C2)
        assert w is not None, t
        res = residual(w.g, C1, C2)
        assert res <= 1e-9, (t, res)
        worst = max(worst, res)
    absent = 0
    while absent < 50:
        t1, t2 = rng.sample(types, 2)
        C1 = act_bracket(random_group_element(rng, 10), representative(t1))
        C2 = act_bracket(random_group_element(rng, 10), representative(t2))
        assert witness(C1, C2) is None, (t1, t2)
        absent += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 10, f"took {elapsed:.2f}s"
    return f"(worst residual {worst:.1e})"


@record(9, "closure sets, monotonicity and transitivity, exact")
def test_criterion_09_closures():
    assert closure_set("V") == {"V", "I"}
    assert closure_set("IV") == {"IV", "II", "V", "I"}
    assert closure_set("VIh") == {"VIh", "II", "I"}
    assert closure_set(UNION_VI) - closure_set("VIh") == {UNION_VI, "IV", "V", "VI0"}
    assert closure_set(UNION_VII) - closure_set("VIIh") == {UNION_VII, "IV", "V", "VII0"}
    poset = closure_poset()
    assert poset.is_acyclic()
    for node in poset.nodes:
        for lower in closure_set(node):
            assert closure_set(lower) <= closure_set(node)
            if lower != node:
                assert node_dimension(lower) < node_dimension(node)


@record(10, "complex mode: 4 A-class orbits by rank, VII_h(h) = VII_h(-h), exact")
def test_criterion_10_complex():
    rng = random.Random(10)
    by_rank = {0: "I", 1: "II", 2: "VII0", 3: "IX"}
    seen = set()
    for _ in range(200):
        r = rng.randint(0, 3)
        d = [random_scalar(rng, 20, COMPLEX) or 1 for _ in range(r)] + [0] * (3 - r)
        g = random_group_element(rng, 10, COMPLEX)
        A = act_sym(g, SymForm.diag(*d))
        t = classify(Tr_embed(A), COMPLEX).type
        assert t.label == by_rank[r]
        seen.add(t.label)
    assert seen == set(by_rank.values())
    for _ in range(50):
        h = random_scalar(rng, 20, COMPLEX)
        if h == 0:
            continue
        plus = compose(SymForm.diag(1, 1, 0), lam(3, h))
        minus = compose(SymForm.diag(1, 1, 0), lam(3, -h))
        tp, tm = classify(plus, COMPLEX).type, classify(minus, COMPLEX).type
        assert tp == tm == BianchiType("VIIh", h * h)
    h = GaussianRational(1, 2)
    g = random_group_element(rng, 10, COMPLEX)
    C1 = compose(SymForm.diag(1, 1, 0), lam(3, h))
    C2 = act_bracket(g, compose(SymForm.diag(1, 1, 0), lam(3, -h)))
    w = witness(C1, C2, COMPLEX)
    assert w is not None and residual(w.g, C1, C2) <= 1e-9


@record(11, "derived-algebra dimensions; only II and III are 1-dimensional, exact")
def test_criterion_11_derived():
    expected = {"I": 0, "II": 1, "IV": 2, "V": 2, "VI0": 2, "VII0": 2, "VIII": 3, "IX": 3}
    for label, dim in expected.items():
        assert derived_algebra_dim(representative(BianchiType(label))) == dim
    assert derived_algebra_dim(representative(BianchiType("VIh", 1))) == 1
    one_dim = set()
    for t in _types_with_params() + [BianchiType("VIh", Fraction(1, 4)), BianchiType("VIIh", 4)]:
        d = derived_algebra_dim(representative(t))
        if t.label in ("VIh", "VIIh") and not (t.label == "VIh" and t.h_squared == 1):
            assert d == 2, t
        if d == 1:
            one_dim.add(t.presented_as or t.label)
    assert one_dim == {"II", "III"}


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                with redirect_stdout(io.StringIO()):
                    fn()
            except BaseException:
                failures += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failures else 0)
