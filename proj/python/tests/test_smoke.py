import math

import pynsf1d as nsf


def test_pressure_ideal_gas():
    gas = nsf.ideal_gas(1.0, 1.5)
    assert nsf.pressure(gas, nsf.FluidPoint(2.0, 0.0, 3.0)) == 1.5


def test_cutoff_values():
    assert nsf.eta(-1.0) == 1.0
    assert nsf.eta(0.0) == 0.5
    assert nsf.eta(1.0) == 0.0
    assert nsf.eta_prime(0.0) == -0.75
    assert nsf.eta_prime(0.5) == nsf.eta_prime(-0.5)


def test_contact_wave():
    gas = nsf.ideal_gas(1.0, 1.5)
    wave = nsf.make_contact(gas, nsf.FluidPoint(1.0, 0.0, 1.0), 2.0)
    assert wave.p_bar == 1.0
    assert abs(wave.right.theta - 2.0) < 1e-14
    left = nsf.sample_contact(wave, -0.5, 0.0)
    assert left.tau == 1.0


def test_relative_entropy_nonnegative():
    gas = nsf.ideal_gas(1.0, 1.5)
    pt = nsf.FluidPoint(1.3, 0.2, 0.9)
    ref = nsf.FluidPoint(1.0, 0.0, 1.0)
    assert nsf.relative_entropy_density(gas, pt, ref) > 0.0
    assert nsf.relative_entropy_density(gas, ref, ref) == 0.0


def test_simulate_small_run():
    gas = nsf.ideal_gas(1.0, 1.5)
    wave = nsf.make_contact(gas, nsf.FluidPoint(1.0, 0.0, 1.0), 2.0)
    cfg = nsf.RunConfig()
    cfg.kappa = 1e-3
    cfg.nu = 0.0
    cfg.N = 256
    cfg.L = 1.0
    cfg.T = 0.02
    cfg.sample_times = [0.0, 0.01, 0.02]
    out = nsf.simulate(gas, wave, cfg)
    assert out["floor_hits"] == 0
    assert len(out["t"]) == 3
    e = out["E"]
    assert all(val >= 0.0 for val in e)
    assert all(s >= -1e-10 for s in out["e1_slack"])
    assert out["energy_drift"] < 1e-6
    assert len(out["tau"]) == 256


def test_fit_rate_exact():
    pairs = [(k, 2.0 * math.sqrt(k)) for k in (1e-2, 1e-3, 1e-4)]
    fit = nsf.fit_rate(pairs)
    assert abs(fit["slope"] - 0.5) < 1e-10
    assert abs(fit["intercept"] - math.log(2.0)) < 1e-10


def test_tail_ratio_flags():
    ref = nsf.FluidPoint(1.0, 0.0, 1.0)
    elastic = nsf.ideal_elastic_gas(1.0, 1.5, 1.0, 2.0)
    ideal = nsf.ideal_gas(1.0, 1.5)
    assert not nsf.tail_ratio_bound(elastic, ref, 10.0, 1e-6)["diverges"]
    assert nsf.tail_ratio_bound(ideal, ref, 10.0, 1e-6)["diverges"]
