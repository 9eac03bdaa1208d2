"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
import time
from fractions import Fraction as F

import mpmath
import pytest

from quadtrans import limits, measures, quad1, twovar
from quadtrans.errors import IdentityFailure, LowerParameterPole, NonTerminating
from quadtrans.poly import Polynomial1

RESULTS = {}


class Criterion:
    def __init__(self, number, text):
        self.number, self.text = number, text
        self.notes = []

    def note(self, s):
        self.notes.append(s)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        secs = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        extra = "; ".join(self.notes) if exc_type is None else f"{exc_type.__name__}: {exc}"
        line = f"criterion {self.number:2d} {status}  {self.text}  [{secs:.2f}s]  {extra}"
        RESULTS[self.number] = line
        print(line)
        return False


def _identity(rid, params=None, n_max=6):
    rec = quad1.lookup(rid)
    sets = [params] if params is not None else list(rec.defaults)
    return [quad1.verify_identity(rec, P, n_max) for P in sets]


def test_criterion_01_jacobi():
    with Criterion(1, "Jacobi even/odd, alpha in {-1/2, 0, 1/3, 2, 7/2}, n <= 8, exact") as c:
        t0 = time.perf_counter()
        for alpha in (F(-1, 2), F(0), F(1, 3), F(2), F(7, 2)):
            for rid in ("J-even", "J-odd"):
                _identity(rid, {"alpha": alpha}, 8)
        secs = time.perf_counter() - t0
        c.note(f"runtime {secs:.3f}s")
        assert secs < 1


def test_criterion_02_hermite_laguerre():
    with Criterion(2, "Hermite/Laguerre even/odd, n <= 10, exact") as c:
        t0 = time.perf_counter()
        _identity("HL-even", {}, 10)
        _identity("HL-odd", {}, 10)
        secs = time.perf_counter() - t0
        c.note(f"runtime {secs:.3f}s")
        assert secs < 1


def test_criterion_03_askey_wilson():
    with Criterion(3, "Askey-Wilson monic and ratio forms plus b=0, a=b=0, n <= 6, exact") as c:
        t0 = time.perf_counter()
        cases = 0
        for q in (F(1, 4), F(2, 3)):
            for a, b in ((F(1, 2), F(1, 3)), (F(2, 5), F(-1, 5))):
                for rid in ("AW-even", "AW-odd", "AW-norm-even", "AW-norm-odd"):
                    _identity(rid, {"q": q, "a": a, "b": b})
                    cases += 1
                for rid in ("AW-even-b0", "AW-odd-b0"):
                    _identity(rid, {"q": q, "a": a, "b": F(0)})
                    cases += 1
            for rid in ("AW-even-ab0", "AW-odd-ab0"):
                _identity(rid, {"q": q, "a": F(0), "b": F(0)})
                cases += 1
        secs = time.perf_counter() - t0
        c.note(f"{cases} parameter sets, runtime {secs:.2f}s")
        assert secs < 10


def test_criterion_04_half_base():
    with Criterion(4, "Askey-Wilson reparametrization with q = p^2, p in {1/2, 1/3}, n <= 6, exact") as c:
        for p in (F(1, 2), F(1, 3)):
            for a, b in ((F(1, 2), F(1, 3)), (F(2, 5), F(-1, 5))):
                _identity("AW-reparam", {"p": p, "q": p * p, "a": a, "b": b})
            rep = quad1.verify_weight_factorization("AW_reparam", {"a": F(1, 2), "b": F(1, 3), "p": p})
            assert rep["status"] == "pass"
        c.note("weight factorization also checked")


def test_criterion_05_qhyp():
    with Criterion(5, "six terminating (q-)hypergeometric identities, 50 random instances each, exact") as c:
        t0 = time.perf_counter()
        grid_only = 0
        for which in sorted(quad1.QHYP_IDENTITIES):
            rng = random.Random(f"{which}:0")
            done = 0
            while done < 50:
                inst = quad1.random_qhyp_instance(which, rng)
                try:
                    quad1.verify_qhyp_identity(which, inst)
                except (LowerParameterPole, ZeroDivisionError, NonTerminating):
                    continue
                done += 1
                if which.startswith("qhyp-nonstandard"):
                    n, N = inst["n"], inst["N"]
                    grid_only += (2 * n > N) if which.endswith("even") else (2 * n + 1 > N)
        secs = time.perf_counter() - t0
        c.note(f"{grid_only} lattice-only instances, runtime {secs:.2f}s")
        assert grid_only > 0
        assert secs < 10


def test_criterion_06_big_little_wall_qintegral():
    with Criterion(6, "big->little q-Jacobi, discrete q-Hermite->Wall, q-integral display at K = 120") as c:
        for q in (F(1, 4), F(1, 2)):
            for a in (F(1, 3), F(2, 5)):
                _identity("bigqJ-littleqJ-even", {"q": q, "a": a})
                _identity("bigqJ-littleqJ-odd", {"q": q, "a": a})
            _identity("dqH-Wall-even", {"q": q})
            _identity("dqH-Wall-odd", {"q": q})
        worst = 0
        for q in (F(1, 4), F(1, 2)):
            for j in range(7):
                rep = measures.qintegral_display_check(Polynomial1.monomial(j), lambda x: 1, q, K=120)
                assert rep["status"] == "pass"
                assert rep["bound"] <= F(1, 10**20)
                worst = max(worst, rep["difference"])
        c.note(f"q-integral max difference {float(worst):.2e}")


def test_criterion_07_q_racah():
    with Criterion(7, "q-Racah symmetric lattice N in {3/2, 2, 5/2} with both orthogonalities; nonstandard N in {3, 4}") as c:
        q, alpha = F(2, 3), F(1, 2)
        ev, od = quad1.lookup("qRacah-even"), quad1.lookup("qRacah-odd")
        for N in (F(3, 2), F(2), F(5, 2)):
            P = {"q": q, "alpha": alpha, "N": N}
            M = int(2 * N + 1)
            quad1.verify_identity(ev, P, M // 2)
            quad1.verify_identity(od, P, (M - 1) // 2)
            L = measures.discrete_qracah_functional(N, q, alpha, variant="56", claim_positive=True)
            measures.orthogonality_check(ev.lhs.spec(P), L, M)
            Y = [y * y + 2 * q ** (-M) for y in L.nodes]
            even = measures.DiscreteFinite(Y, L.weights)
            odd = measures.DiscreteFinite(Y, [w * y * y for y, w in zip(L.nodes, L.weights)])
            measures.orthogonality_check(ev.rhs.spec(P), even, M // 2)
            measures.orthogonality_check(od.rhs.spec(P), odd, (M - 1) // 2)
        levels = set()
        for rid in ("qRacah-nonstandard-even", "qRacah-nonstandard-odd"):
            rec = quad1.lookup(rid)
            for P in rec.defaults:
                Nq, g, qq = P["N"], P["gamma"], P["q"]
                assert qq ** (-Nq) < g < qq ** (-Nq - 2)
                measures.discrete_qracah_functional(Nq, qq, gamma=g, variant="47", claim_positive=True)
                rep = quad1.verify_identity(rec, P, Nq)
                levels |= {ch["level"] for ch in rep["checked"]}
        assert levels == {"polynomial", "gridpoints"}
        c.note("right-hand orthogonality uses the pushforward weights")


def test_criterion_08_q_equal_one():
    ids = ["cHahn-Wilson-even", "cHahn-Wilson-odd", "MP-cdHahn-even", "MP-cdHahn-odd", "Hahn-Racah-even",
           "Hahn-Racah-odd", "Krawtchouk-dualHahn-even-2N", "Krawtchouk-dualHahn-odd-2N",
           "Krawtchouk-dualHahn-even-2N1", "Krawtchouk-dualHahn-odd-2N1"]
    with Criterion(8, "q = 1 continuous and discrete transformations over 3-point grids, exact") as c:
        t0 = time.perf_counter()
        for rid in ids:
            rec = quad1.lookup(rid)
            assert len(rec.defaults) == 3
            _identity(rid, None, 6)
        secs = time.perf_counter() - t0
        c.note(f"{len(ids)} records, runtime {secs:.2f}s")
        assert secs < 5


def test_criterion_09_split_master():
    with Criterion(9, "split master property on 20 random even measures, n <= 5, exact") as c:
        rng = random.Random(0)
        sizes = []
        for _ in range(20):
            mu = measures.random_even_measure(rng, max_nodes=12)
            assert len(mu.nodes) <= 12
            measures.verify_split_master(mu, 5)
            sizes.append(len(mu.nodes))
        c.note(f"support sizes {min(sizes)}..{max(sizes)}")


def test_criterion_10_prop17():
    with Criterion(10, "square-swap proposition on 10 random even functionals, upto (2, 2), exact") as c:
        t0 = time.perf_counter()
        rng = random.Random(0)
        for _ in range(10):
            twovar.verify_prop17(twovar.random_even_functional(rng), upto=(2, 2))
        secs = time.perf_counter() - t0
        c.note(f"runtime {secs:.2f}s")
        assert secs < 5


def test_criterion_11_bc2():
    with Criterion(11, "BC2 quadratic transformation exact for n + k <= 5; quadrature cross-check at (1/3, 1/4)") as c:
        t0 = time.perf_counter()
        for alpha, gamma in ((F(1, 2), F(1, 2)), (F(1, 2), F(3, 2)), (F(3, 2), F(1, 2))):
            twovar.verify_bc2_quadratic(alpha, gamma, upto=5, engine="exact")
        secs = time.perf_counter() - t0
        assert secs < 60
        t1 = time.perf_counter()
        rep = twovar.verify_bc2_quadratic(F(1, 3), F(1, 4), upto=5, engine="quadrature", tol=mpmath.mpf("1e-18"))
        c.note(f"exact {secs:.1f}s, quadrature {time.perf_counter() - t1:.1f}s, max diff {float(rep.get('max_diff', 0)):.1e}")


def test_criterion_12_koornwinder():
    with Criterion(12, "Koornwinder even/odd at p = 1/2, t = 1/3, a = 2/5, n + k <= 4, within 1e-18") as c:
        t0 = time.perf_counter()
        p = F(1, 2)
        q = p * p
        rep = twovar.verify_koornwinder_quadratic(p, F(1, 3), F(2, 5), upto=4, tol=mpmath.mpf("1e-18"))
        assert rep["weight"]["status"] == "pass" and rep["weight"]["points"] == 16
        bases = {"lhs": q, "even": q * q, "odd": q * q}
        for side, K in rep["K"].items():
            assert bases[side] ** K <= F(1, 10**25)
        assert rep["max_diff"] <= 1e-18
        secs = time.perf_counter() - t0
        assert secs < 600
        c.note(f"max diff {rep['max_diff']:.1e}, runtime {secs:.1f}s")


def test_criterion_13_limits_and_lowering():
    with Criterion(13, "limit records converge with order >= 0.9; lowering formulas exact for n <= 6") as c:
        worst = None
        for rid in limits.LIMIT_RECORDS:
            rep = limits.verify_limit(rid)
            if rep["observed_order"] is not None:
                worst = rep["observed_order"] if worst is None else min(worst, rep["observed_order"])
        grid = (F(1, 3), F(1, 4), F(2))
        for which in limits.LOWERINGS:
            for alpha in grid:
                for beta in grid if which == "jacobi_general" else (None,):
                    limits.verify_lowering(which, alpha, beta, 6)
        c.note(f"{len(limits.LIMIT_RECORDS)} limits, lowest observed order {worst:.2f}")


MUTATION_IDS = ["J-odd", "AW-odd", "qRacah-odd", "Hahn-Racah-odd", "Krawtchouk-dualHahn-even-2N"]


def test_criterion_14_mutation():
    with Criterion(14, "dropped prefactor / perturbed parameter map fail with a witness on 5 records") as c:
        for rid in MUTATION_IDS:
            rec = quad1.lookup(rid)
            for mutant in (quad1.drop_prefactor(rec), quad1.perturb_parameter_map(rec)):
                with pytest.raises(IdentityFailure) as exc:
                    for P in rec.defaults:
                        quad1.verify_identity(mutant, P, 6)
                assert exc.value.witness
        c.note(", ".join(MUTATION_IDS))
