import math

import pytest

from lora_sic.analytic import (
    NetworkConfig,
    capture_probability,
    connection_probability,
    coverage,
    default_config,
    path_loss_gain,
    sic_capture_probability,
    single_interferer_given_collision,
    with_capture_threshold,
)
from lora_sic.geometry import OutOfCoverageError, default_layout, uniform_traffic
from lora_sic.params import RadioConfig, db_to_linear, default_sf_table, linear_to_db
from lora_sic.specfun import q2_integral_quadrature

# Border operating point values, frozen from a 40-digit independent
# evaluation of the defining integrals (noise and path loss computed exactly).
BORDER_H1 = 0.9041341309352110
BORDER_Q1 = 0.5407497420521153
BORDER_Q2 = 0.1848069347712998
BORDER_H1Q2_6DB = 0.0808280028420661


def test_config_rejects_mismatched_sf_table(cfg):
    with pytest.raises(ValueError):
        NetworkConfig(
            radio=RadioConfig(),
            layout=default_layout(),
            sf_table=default_sf_table()[:5],
            traffic=uniform_traffic(0.0),
        )


def test_wavelength_anchor(cfg):
    assert cfg.radio.wavelength_m == pytest.approx(0.3454, abs=1e-4)


def test_path_loss_gain_at_border(cfg):
    assert path_loss_gain(3000.0, cfg.radio) == pytest.approx(7.826114487474150e-15, rel=1e-12)


def test_path_loss_power_law_scaling(cfg):
    ratio = path_loss_gain(2000.0, cfg.radio) / path_loss_gain(1000.0, cfg.radio)
    assert ratio == pytest.approx(2.0**-2.8, rel=1e-12)


def test_path_loss_rejects_nonpositive_distance(cfg):
    with pytest.raises(ValueError):
        path_loss_gain(0.0, cfg.radio)


def test_connection_probability_near_gateway_limit(cfg):
    assert connection_probability(1e-3, cfg) == pytest.approx(1.0, abs=1e-12)


def test_connection_probability_border_anchor(cfg):
    assert connection_probability(3000.0, cfg) == pytest.approx(BORDER_H1, rel=1e-10)


def test_connection_probability_noise_free_limit(cfg):
    loud = default_config(tx_power_dbm=200.0)
    assert connection_probability(3000.0, loud) == pytest.approx(1.0, abs=1e-9)


def test_connection_probability_out_of_coverage(cfg):
    with pytest.raises(OutOfCoverageError):
        connection_probability(3500.0, cfg)


def test_capture_probability_no_interferers(cfg):
    assert capture_probability(3000.0, cfg, 0.0) == 1.0


def test_capture_probability_border_anchor(cfg):
    assert capture_probability(3000.0, cfg, 1.0) == pytest.approx(BORDER_Q1, rel=1e-10)


def test_capture_probability_threshold_free_limit(cfg):
    easy = default_config(capture_threshold_db=-300.0)
    assert capture_probability(3000.0, easy, 1.0) == pytest.approx(1.0, abs=1e-9)


def test_capture_probability_rejects_negative_intensity(cfg):
    with pytest.raises(ValueError):
        capture_probability(3000.0, cfg, -0.1)


def test_sic_capture_probability_no_interferers(cfg):
    assert sic_capture_probability(3000.0, cfg, 0.0) == 0.0


def test_sic_capture_probability_border_anchor(cfg):
    assert sic_capture_probability(3000.0, cfg, 1.0) == pytest.approx(BORDER_Q2, rel=1e-10)


def test_sic_gain_anchor_at_one_db(cfg):
    b = coverage(3000.0, cfg, 1.0)
    assert b.h1 * b.q2 == pytest.approx(0.1670902574, abs=5e-9)


def test_sic_gain_at_six_db():
    # The honest six-decibel value; the capture threshold enters as 10^0.6.
    cfg6 = default_config(capture_threshold_db=6.0)
    b = coverage(3000.0, cfg6, 1.0)
    assert b.h1 * b.q2 == pytest.approx(BORDER_H1Q2_6DB, rel=1e-9)


def test_coverage_zero_intensity_collapses_to_connection(cfg):
    b = coverage(3000.0, cfg, 0.0)
    assert b.q1 == 1.0 and b.q2 == 0.0
    assert b.c1 == b.h1 == b.c1_sic


def test_coverage_border_breakdown(cfg):
    b = coverage(3000.0, cfg, 1.0)
    assert b.c1 == pytest.approx(0.4889102981, abs=1e-9)
    assert b.c1_sic == pytest.approx(0.6560005554, abs=1e-9)
    assert b.c1 == pytest.approx(b.h1 * b.q1, rel=1e-15)
    assert b.c1_sic == pytest.approx(b.h1 * (b.q1 + b.q2), rel=1e-15)
    assert b.ring == 6 and b.alpha_i == 1.0


def test_coverage_uses_traffic_when_intensity_omitted():
    cfg500 = default_config(nbar=500.0)
    b = coverage(3000.0, cfg500)
    assert b.alpha_i == pytest.approx(3.0555555556, rel=1e-9)
    assert b.c1 == pytest.approx(0.1381618975, abs=1e-9)
    assert b.c1_sic == pytest.approx(0.2035238290, abs=1e-9)


@pytest.mark.parametrize(
    "alpha, expected",
    [(1.0, 0.5819767069), (2.0, 0.3130352855)],
)
def test_single_interferer_given_collision_values(alpha, expected):
    assert single_interferer_given_collision(alpha) == pytest.approx(expected, abs=1e-9)


def test_single_interferer_rare_event_limit():
    assert single_interferer_given_collision(1e-12) == pytest.approx(1.0, abs=1e-9)


def test_single_interferer_rejects_nonpositive():
    with pytest.raises(ValueError):
        single_interferer_given_collision(0.0)


def test_single_interferer_strictly_decreasing_and_bounded():
    alphas = [0.05 * k for k in range(1, 101)]
    values = [single_interferer_given_collision(a) for a in alphas]
    assert all(0.0 < v < 1.0 for v in values)
    assert all(b < a for a, b in zip(values, values[1:]))


# --- grid properties -------------------------------------------------------

D1_GRID = {1: [50.0, 250.0, 500.0], 4: [1520.0, 1750.0, 2000.0], 6: [2520.0, 2750.0, 3000.0]}
ALPHA_GRID = [0.0, 0.25, 0.5, 1.0, 1.5, 2.0]
GAMMA_LIN_GRID = [0.5, 1.0, 1.26, 2.0, 4.0, 10.0]


def _cfg_gamma(gamma_lin):
    return default_config(capture_threshold_db=linear_to_db(gamma_lin))


def test_q1_nonincreasing_in_intensity(cfg):
    for d1s in D1_GRID.values():
        for d1 in d1s:
            values = [capture_probability(d1, cfg, a) for a in ALPHA_GRID]
            assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_q1_nonincreasing_in_threshold():
    for d1 in (500.0, 3000.0):
        values = [capture_probability(d1, _cfg_gamma(g), 1.0) for g in GAMMA_LIN_GRID]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_q1_nonincreasing_in_distance_within_ring(cfg):
    for gamma_lin in GAMMA_LIN_GRID:
        cfg_g = _cfg_gamma(gamma_lin)
        for d1s in D1_GRID.values():
            values = [capture_probability(d1, cfg_g, 1.0) for d1 in d1s]
            assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_q2_nondecreasing_in_distance_within_ring(cfg):
    for gamma_lin in GAMMA_LIN_GRID:
        cfg_g = _cfg_gamma(gamma_lin)
        for d1s in D1_GRID.values():
            values = [sic_capture_probability(d1, cfg_g, 1.0) for d1 in d1s]
            assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_q2_factorizes_in_intensity(cfg):
    for d1 in (250.0, 1750.0, 3000.0):
        ratios = [
            sic_capture_probability(d1, cfg, a) / (a * math.exp(-a))
            for a in (0.3, 1.0, 2.5)
        ]
        assert ratios[0] == pytest.approx(ratios[1], rel=1e-12)
        assert ratios[1] == pytest.approx(ratios[2], rel=1e-12)


def test_capture_events_disjoint_at_and_above_zero_db(cfg):
    """q1 + q2 <= 1 whenever the capture threshold is at least 0 dB."""
    for gamma_lin in [g for g in GAMMA_LIN_GRID if g >= 1.0]:
        cfg_g = _cfg_gamma(gamma_lin)
        for d1s in D1_GRID.values():
            for d1 in d1s:
                for alpha in ALPHA_GRID:
                    q1 = capture_probability(d1, cfg_g, alpha)
                    q2 = sic_capture_probability(d1, cfg_g, alpha)
                    assert q1 + q2 <= 1.0 + 1e-12


def test_capture_events_overlap_below_zero_db():
    """Sub-0 dB thresholds let both nodes capture at once: the closed forms
    then stop describing disjoint events and their sum can pass one."""
    cfg_g = _cfg_gamma(0.5)
    q1 = capture_probability(3000.0, cfg_g, 0.4)
    q2 = sic_capture_probability(3000.0, cfg_g, 0.4)
    assert q1 + q2 > 1.0


def test_closed_forms_match_quadrature_on_grid(cfg):
    """Dual-route agreement of both capture factors everywhere on the grid."""
    eta = cfg.radio.path_loss_exp
    for gamma_lin in GAMMA_LIN_GRID:
        cfg_g = _cfg_gamma(gamma_lin)
        for ring, d1s in D1_GRID.items():
            lo, hi = cfg.layout.bounds(ring)
            for d1 in d1s:
                for alpha in (0.5, 1.0):
                    q1 = capture_probability(d1, cfg_g, alpha)
                    expected_q1 = math.exp(
                        -alpha * q2_integral_quadrature(d1, 1.0 / gamma_lin, eta, lo, hi)
                    )
                    assert q1 == pytest.approx(expected_q1, rel=1e-8)
                    q2 = sic_capture_probability(d1, cfg_g, alpha)
                    expected_q2 = (
                        alpha
                        * math.exp(-alpha)
                        * q2_integral_quadrature(d1, gamma_lin, eta, lo, hi)
                    )
                    assert q2 == pytest.approx(expected_q2, rel=1e-8)
