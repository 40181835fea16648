import random

import pytest

from spectre import compile as compile_mod
from spectre import dsl, epset, pseries, setsys
from spectre.compile import (
    CompileUnsupported,
    compile_system,
    spectral_equivalence_check,
)
from spectre.epset import POS, ZERO, normalize, singleton
from spectre.pseries import Construct, PSSystem, Var, X, evaluate, s_from
from spectre.setsys import GammaTerm, term

from conftest import fixture_text, random_series_system

ONE = singleton(1)


class TestCompile:
    def test_binary_tree(self):
        sys_ = dsl.parse(fixture_text("binary.spec"))
        report = compile_system(sys_)
        assert report.system.equations == (
            (term(ONE, 1), term(ONE, 1, e0=normalize([2]))),
        )
        assert report.classification.is_elementary
        assert report.flags == ()

    def test_blue_red(self):
        sys_ = dsl.parse(fixture_text("bluered.spec"))
        report = compile_system(sys_)
        eqs = report.system.equations
        assert eqs[0] == (
            term(ONE, 3),
            term(ONE, 3, e0=ONE, e1=normalize([2])),
            term(ONE, 3, e0=normalize([2]), e1=ONE),
        )
        assert eqs[1] == (term(ONE, 3), term(ONE, 3, e2=normalize([2])))
        assert eqs[2] == (
            GammaTerm(ZERO, (ONE, ZERO, ZERO)),
            GammaTerm(ZERO, (ZERO, ONE, ZERO)),
        )

    def test_structured_tree(self):
        sys_ = dsl.parse(fixture_text("structured.spec"))
        report = compile_system(sys_)
        eqs = report.system.equations
        pos_even = normalize((), [(2, 2)])
        primes = epset.ENUMERATED_SETS["Primes"]
        assert eqs[0] == (
            term(ONE, 3, e0=pos_even),
            term(normalize([4]), 3, e1=normalize([3])),
        )
        assert eqs[1] == (
            term(ONE, 3),
            GammaTerm(ONE, (primes, normalize((), [(4, 6)]), ZERO)),
        )
        assert eqs[2] == (
            GammaTerm(ZERO, (ONE, ZERO, ZERO)),
            GammaTerm(ZERO, (ZERO, ONE, ZERO)),
        )
        assert report.flags == ("MSet[Primes]",)

    def test_constant_argument_star(self):
        # Seq over a constant spectrum collapses to a star of spectra
        sys_ = PSSystem(
            ("Y",), (Construct("Seq", POS, pseries.Add((X(), pseries.Pow(X(), 2)))),)
        )
        report = compile_system(sys_)
        expect = epset.star(POS, normalize([1, 2]))
        assert report.system.equations == ((term(expect, 1),),)

    def test_enumerated_over_constant_rejected(self):
        primes = epset.ENUMERATED_SETS["Primes"]
        sys_ = PSSystem(("Y",), (Construct("MSet", primes, X()),))
        with pytest.raises(CompileUnsupported):
            compile_system(sys_)

    def test_finite_index_composite_argument(self):
        # MSet[{2}] over x*y expands termwise into a squared family
        sys_ = PSSystem(
            ("Y",),
            (
                pseries.Add(
                    (
                        X(),
                        Construct(
                            "MSet",
                            normalize([2]),
                            pseries.Mul((X(), Var(0))),
                        ),
                    )
                ),
            ),
        )
        report = compile_system(sys_)
        assert report.system.equations == (
            (term(ONE, 1), term(normalize([2]), 1, e0=normalize([2]))),
        )

    def test_dcycle_note(self):
        sys_ = PSSystem(
            ("Y",),
            (pseries.Add((X(), pseries.Mul((X(), Construct("DCycle", POS, Var(0)))))),),
        )
        report = compile_system(sys_)
        assert any("DCycle" in n for n in report.notes)
        assert report.system.equations == (
            (term(ONE, 1), term(ONE, 1, e0=POS)),
        )


class TestEquivalence:
    def test_binary_tree(self):
        rep = spectral_equivalence_check(dsl.parse(fixture_text("binary.spec")), 64)
        assert rep.ok and not rep.hat_applied
        assert rep.first_mismatch is None

    def test_blue_red(self):
        rep = spectral_equivalence_check(dsl.parse(fixture_text("bluered.spec")), 40)
        assert rep.ok and rep.hat_applied

    def test_corrupted_detected(self, monkeypatch):
        # negative control: sabotage the compiled system (drop the constant
        # family) and verify the checker reports the first disagreement
        sys_ = dsl.parse(fixture_text("binary.spec"))
        real = compile_mod.compile_system

        def corrupt(s):
            rep = real(s)
            eqs = ((rep.system.equations[0][1],),)
            bad = setsys.SetSystem(rep.system.variables, eqs)
            return compile_mod.CompileReport(bad, rep.notes, rep.flags, None)

        monkeypatch.setattr(compile_mod, "compile_system", corrupt)
        rep = spectral_equivalence_check(sys_, 32)
        assert not rep.ok
        assert rep.first_mismatch == ("T", 1)


class TestConstructSpectra:
    def test_construct_spectrum_is_star(self):
        # support of Theta_J(a) equals J * support(a), truncated
        rng = random.Random(31)
        n = 48
        for _ in range(40):
            coeffs = [0] + [rng.choice((0, 0, 1, 2)) for _ in range(8)]
            if not any(coeffs):
                coeffs[1] = 1
            a = s_from(coeffs, n)
            if rng.random() < 0.5:
                idx = POS
            else:
                idx = normalize(sorted(rng.sample(range(1, 6), rng.randint(1, 3))))
            kind = rng.choice(("Seq", "MSet"))
            got = evaluate(Construct(kind, idx, Var(0)), (a,), n)
            support = pseries.spectrum_extract(got).support
            arg_spec = normalize(
                [i for i, c in enumerate(coeffs) if c]
            )
            want = epset.star(idx, arg_spec)
            assert support == set(epset.enumerate_range(want, 0, n))


class TestRandomSystems:
    def test_random_equivalence(self):
        rng = random.Random(5150)
        for _ in range(20):
            sys_ = random_series_system(rng, rng.randint(1, 3))
            rep = spectral_equivalence_check(sys_, 48)
            assert rep.ok, sys_
