"""Acceptance suite: one PASS/FAIL line per criterion, exact equality throughout.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary.  Each criterion also has a wall-clock budget.
"""
import random
import time
from math import comb

from superfat.apolarity import catalecticant, perp_space, qq_form, qq_monomialize, span_membership
from superfat.experiments import generic_square_hilbert
from superfat.fields import GF, QQ, QQI
from superfat.grobner import Ideal, ideal_equal, maximal_ideal, minimal_generator_degrees, quotient_dimension
from superfat.ioparse import make_ring, parse_ideal
from superfat.polyring import PolyRing
from superfat.secants import (
    fill_degree_check, q2, qq2, secant_dimension, tangent_span, tau2, terracini_intersection,
)
from superfat.zerodim import (
    SquarePair, binomial_identity, hypercube_ideal, line_intersection_length, perpendicular_union_check,
    smoothing_check, superfat_hull, symmetry_degree, two_superfat_square_form, union_of_squares_check,
)

EXAMPLE_IDEAL = "[(x-y)^3, y^3 + x^2*y^2, x*y^3, y^4]"

class Criterion:
    def __init__(self, number, title, budget, record):
        self.number, self.title, self.budget, self.record = number, title, budget, record
        self.failures = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        if exc_type is not None:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        if dt > self.budget:
            self.failures.append(f"took {dt:.1f}s > {self.budget}s")
        status = "PASS" if not self.failures else "FAIL"
        detail = "" if not self.failures else " -- " + "; ".join(self.failures)
        self.record(f"[{status}] C{self.number} {self.title} ({dt:.2f}s){detail}")
        assert not self.failures, self.failures
        return False

def _independent_forms(ring, rng):
    n = ring.nvars
    while True:
        forms = [ring.linear_form([rng.randint(-9, 9) for _ in range(n)]) for _ in range(n)]
        try:
            return hypercube_ideal(forms, 1) and forms
        except ValueError:
            continue

def test_c01_lengths(acceptance):
    with Criterion(1, "hypercube length m^n (m<=4, n<=3); fat point length C(m+n-1,n) (m<=5, n<=3)", 5,
                   acceptance) as c:
        rng = random.Random(1)
        for n in (1, 2, 3):
            ring = PolyRing(tuple(f"x{i}" for i in range(n)), QQ)
            for m in range(1, 5):
                I = hypercube_ideal(_independent_forms(ring, rng), m)
                c.check(quotient_dimension(I).dimension == m ** n, f"hypercube n={n} m={m}")
            for m in range(1, 6):
                fat = maximal_ideal(ring) ** m
                c.check(quotient_dimension(fat).dimension == comb(m + n - 1, n), f"fat point n={n} m={m}")

def test_c02_symmetry_decision(acceptance):
    with Criterion(2, "symmetry decisions on the four reference ideals", 10, acceptance) as c:
        R = make_ring("x,y")
        cases = [("[x^2, y^2]", (2, 4, True)), ("[x^3, y^3, x^2*y^2]", (3, 8, False)),
                 (EXAMPLE_IDEAL, (3, 9, True))]
        for text, (m, length, superfat) in cases:
            rep = symmetry_degree(parse_ideal(text, R))
            c.check(rep.symmetric and (rep.m, rep.length, rep.superfat) == (m, length, superfat), text)
        projective = parse_ideal("[(x-y)^3, y^3*z + x^2*y^2, x*y^3, y^4]", make_ring("x,y,z"))
        c.check(sorted(minimal_generator_degrees(projective)) == [3, 4, 4, 4], "example ideal generator degrees")
        rep = symmetry_degree(parse_ideal("[x^2+y^2, x^3, x^2*y]", R))
        c.check(not rep.symmetric and rep.length == 5, "(x^2+y^2, x^3, x^2 y)")

def test_c03_line_cross_validation(acceptance):
    with Criterion(3, "200 random lines give length m; (1,+-i) give 3 for the non-symmetric ideal", 10,
                   acceptance) as c:
        R = make_ring("x,y")
        rng = random.Random(3)
        for text in ("[x^2, y^2]", "[x^3, y^3, x^2*y^2]", EXAMPLE_IDEAL):
            I = parse_ideal(text, R)
            m = symmetry_degree(I).m
            for _ in range(200):
                a = (rng.randint(-50, 50), rng.randint(-50, 50))
                while a == (0, 0):
                    a = (rng.randint(-50, 50), rng.randint(-50, 50))
                c.check(line_intersection_length(I, a) == m, f"{text} along {a}")
        Ri = make_ring("x,y", "Qi")
        J = parse_ideal("[x^2+y^2, x^3, x^2*y]", Ri)
        for sign in (1, -1):
            c.check(line_intersection_length(J, (QQI(1), QQI.i * sign)) == 3, f"direction (1, {sign}i)")

def test_c04_superfat_hull(acceptance):
    with Criterion(4, "superfat_hull contained, m-symmetric, length m^2 over 5 seeds", 20, acceptance) as c:
        R = make_ring("x,y")
        for text, m in (("[x^2, x*y, y^2]", 2), ("[x^3, x^2*y, x*y^2, y^3]", 3), ("[x^3, y^3, x^2*y^2]", 3)):
            I = parse_ideal(text, R)
            for seed in range(5):
                J = superfat_hull(I, seed)
                rep = symmetry_degree(J)
                c.check(J.issubset(I) and rep.symmetric and rep.m == m and rep.length == m * m,
                        f"{text} seed {seed}")

def test_c05_union_of_squares(acceptance):
    with Criterion(5, "union of 2m-1 squares is (x,y)^(2m-1) for m=1..5 (full intersection m<=3)", 30,
                   acceptance) as c:
        for m in range(1, 6):
            res = union_of_squares_check(m, full_up_to=3)
            c.check(res["ok"], f"m={m}")
            if m <= 3:
                c.check(res["intersection_equals_fat"], f"full intersection m={m}")

def test_c06_binomial_lemma(acceptance):
    with Criterion(6, "alternating binomial sum vanishes for 1<=m,i<=30", 1, acceptance) as c:
        bad = [(m, i) for m in range(1, 31) for i in range(1, 31) if binomial_identity(m, i)]
        c.check(not bad, f"nonzero at {bad[:5]}")

def test_c07_perpendicular_union(acceptance):
    with Criterion(7, "two perpendicular 2-squares intersect in (x^2+y^2, x^3, x^2 y)", 2, acceptance) as c:
        res = perpendicular_union_check()
        c.check(res["equals_target"] and res["ok"], "intersection")

def test_c08_perp_spans(acceptance):
    with Criterion(8, "three perp spaces equal the stated monomial bases (dim 4)", 2, acceptance) as c:
        R = make_ring("x0,x1,x2")
        x0, x1, x2 = R.gens
        for d in (4,):
            P = perp_space(parse_ideal("[x0^2, x1^2]", R), d)
            expect = [x2 ** d, x2 ** (d - 1) * x0, x2 ** (d - 1) * x1, x2 ** (d - 2) * x0 * x1]
            c.check(P.dim == 4 and all(P.contains(f) for f in expect), "(x0^2, x1^2) degree 4")
        for d in (3, 4, 5):
            P = perp_space(parse_ideal("[x1^2, x0*x1, x0^3]", R), d)
            expect = [x2 ** d, x2 ** (d - 1) * x0, x2 ** (d - 1) * x1, x2 ** (d - 2) * x0 ** 2]
            c.check(P.dim == 4 and all(P.contains(f) for f in expect), f"(x1^2, x0 x1, x0^3) degree {d}")
        B = make_ring("s0,s1;t0,t1")
        s0, s1, t0, t1 = B.gens
        P = perp_space(parse_ideal("[s0^2, t0^2]", B), (2, 2))
        expect = [s0 * s1 * t0 * t1, s0 * s1 * t1 ** 2, s1 ** 2 * t0 * t1, s1 ** 2 * t1 ** 2]
        c.check(P.dim == 4 and all(P.contains(f) for f in expect), "(s0^2, t0^2) bidegree (2,2)")

def test_c09_catalecticant_pattern(acceptance):
    with Criterion(9, "d=4 tau2 catalecticant support; (x1^2, x0 x1, x0^3) perp identity d=3..8", 5,
                   acceptance) as c:
        R = make_ring("x0,x1,x2")
        x0, x1, x2 = R.gens
        rng = random.Random(9)
        # rows/cols x0^2, x0x1, x0x2, x1^2, x1x2, x2^2; entry (u, v) carries the coefficient of x^(u+v),
        # so a_{1,1,2} sits at (1,5),(2,4),(4,2),(5,1), a_{1,0,3} at (2,5),(5,2), a_{0,1,3} at (4,5),(5,4),
        # a_{0,0,4} at (5,5)
        pattern = {(1, 5), (2, 4), (4, 2), (5, 1), (2, 5), (5, 2), (4, 5), (5, 4), (5, 5)}
        for _ in range(5):
            a0, a1, a2, a3 = (rng.choice([k for k in range(-20, 21) if k]) for _ in range(4))
            F = x2 ** 2 * (x2 ** 2 * a2 + x2 * x1 * a1 + x2 * x0 * a0 + x1 * x0 * a3)
            C = catalecticant(F, 2)
            nz = C.nonzero_positions()
            c.check(nz == pattern, f"support {sorted(nz)}")
            c.check(not any(j == 0 for _, j in nz) and not any(i == 0 for i, _ in nz), "zero first row/col")
        for d in range(3, 9):
            P = perp_space(parse_ideal("[x1^2, x0*x1, x0^3]", R), d)
            expect = [x2 ** d, x2 ** (d - 1) * x0, x2 ** (d - 1) * x1, x2 ** (d - 2) * x0 ** 2]
            c.check(P.dim == 4 and all(P.contains(f) for f in expect), f"perp identity d={d}")

def test_c10_terracini_suite(acceptance):
    with Criterion(10, "Terracini dimensions (3 agreeing trials)", 60, acceptance) as c:
        def dim_of(pm, s):
            r = secant_dimension(pm, s, seed=0, trials=3)
            c.check(r.agree, f"{pm.name} s={s} trials disagree {r.trial_dims}")
            return r.dim

        for d in (4, 5, 6):
            c.check(dim_of(tau2(d), 1) == 7, f"tau2({d})")
        for d in range(3, 9):
            r = fill_degree_check(d, seed=0, trials=3)
            c.check(r.verified, f"fill d={d} {r.dims}")
            if d == 4:
                c.check(r.dims[2] == 13 and r.ambient == 14, "sigma_2(tau2(V_4)) is a hypersurface")
        c.check(dim_of(q2(2), 2) == 8, "sigma_2 q2(V_22)")
        ti = terracini_intersection(q2(2), seed=0)
        c.check(ti["dim_W"] == 6 and ti["dim_intersection"] == 3, f"W, W cap W' {ti}")
        for d in (3, 4, 5):
            c.check(dim_of(q2(d), 2) == 11, f"sigma_2 q2(V_{d}{d})")
        c.check(dim_of(qq2(2), 2) == 7, "sigma_2 qq2(V_22)")
        for d in (3, 4, 5):
            c.check(dim_of(qq2(d), 2) == 9, f"sigma_2 qq2(V_{d}{d})")
        pm = qq2(3)
        generic = tangent_span(pm, (1, 2, 3, -1, 2, 5, -3, 1)).dim
        degenerate = tangent_span(pm, (1, 2, 1, 2, 2, 5, -3, 1)).dim
        c.check(generic == 5 and degenerate < 5, f"qq2 tangent rank {generic} -> {degenerate}")

def test_c11_w_state(acceptance):
    with Criterion(11, "W_d (x) W_d lies in the 2-square span, d=2..5", 5, acceptance) as c:
        B = make_ring("s0,s1;t0,t1")
        s0, s1, t0, t1 = B.gens
        I = parse_ideal("[s1^2, t1^2]", B)
        for d in range(2, 6):
            W = s0 ** (d - 1) * s1 * t0 ** (d - 1) * t1
            c.check(span_membership(W, perp_space(I, (d, d))), f"d={d}")

def test_c12_generic_square_hilbert(acceptance):
    with Criterion(12, "H(Z_s,t) = min{4s, C(t+2,2)} for s=1..7 over 5 seeds", 60, acceptance) as c:
        for s in range(1, 8):
            for seed in range(5):
                prof = generic_square_hilbert(s, seed=seed)
                c.check(prof.matches and prof.monotone, f"s={s} seed={seed} {prof.values}")
        prof = generic_square_hilbert(7, range(6, 7), seed=0)
        c.check(prof.values == [(6, 28)], "s=7: no sextic through the scheme")

def test_c13_normal_forms(acceptance):
    with Criterion(13, "square normal form over GF(32003) (20 ideals); qq substitution (20 points)", 20,
                   acceptance) as c:
        F = GF(32003)
        R = PolyRing(("x", "y"), F)
        x, y = R.gens
        rng = random.Random(13)
        done = 0
        while done < 20:
            l1 = x.scale(F.random(rng, 100)) + y.scale(F.random(rng, 100))
            l2 = x.scale(F.random(rng, 100)) + y.scale(F.random(rng, 100))
            if not l1 or not l2 or SquarePair(l1, l2).ideal() == Ideal(R, [l1 ** 2]):
                continue
            if quotient_dimension(Ideal(R, [l1 ** 2, l2 ** 2])).dimension != 4:
                continue
            a, b, cc, e = (F.random(rng, 100) for _ in range(4))
            if a * e == b * cc:
                continue
            I = Ideal(R, [(l1 ** 2).scale(a) + (l2 ** 2).scale(b), (l1 ** 2).scale(cc) + (l2 ** 2).scale(e)])
            pair = two_superfat_square_form(I)
            c.check(isinstance(pair, SquarePair) and ideal_equal(pair.ideal(), I), f"ideal {done}")
            done += 1
        Q = make_ring("x0,x1,x2")
        x0, x1, x2 = Q.gens
        for k in range(20):
            a0 = rng.choice([v for v in range(-30, 31) if v])
            a1, a2 = rng.randint(-30, 30), rng.randint(-30, 30)
            point = (QQ(a0), QQ(a1), QQ(a2), QQ(a1) * a2 / a0)
            d = 3 + k % 4
            cert = qq_monomialize(point, (x2, x0, x1), d)
            X0, X1, X2 = cert.substitution
            c.check(cert.verified and (X0 ** (d - 2) * X1 * X2).scale(cert.scalar) == qq_form(point, (x2, x0, x1), d),
                    f"point {point} d={d}")

def test_c14_smoothing_family(acceptance):
    with Criterion(14, "smoothing family: m^n distinct points, limit (x_i^m)", 10, acceptance) as c:
        for m, n in ((2, 2), (3, 2), (2, 3)):
            res = smoothing_check(m, n)
            c.check(res["ok"] and res["dimension"] == m ** n, f"(m,n)=({m},{n})")
