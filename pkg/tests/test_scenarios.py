"""Schedule truth tables for the three scenarios and the custom form."""

import pytest

from adaptive_inv import (
    InvalidParameterError,
    custom,
    demand_shock,
    shock_magnitude_variant,
    stationary,
    supply_disruption,
)
from adaptive_inv.scenarios import by_name


class TestStationary:
    def test_constant_everywhere(self):
        schedule = stationary()
        values = {schedule.params_at(t) for t in range(1, 366)}
        assert values == {(10.0, 0.02)}

    def test_period_zero_rejected(self):
        with pytest.raises(InvalidParameterError):
            stationary().params_at(0)


class TestDemandShock:
    def test_boundary_inclusive(self):
        schedule = demand_shock()
        assert schedule.params_at(182) == (10.0, 0.02)
        assert schedule.params_at(183) == (20.0, 0.02)
        assert schedule.params_at(365) == (20.0, 0.02)

    def test_agrees_with_stationary_before_shock(self):
        shocked, flat = demand_shock(), stationary()
        for t in range(1, 183):
            assert shocked.params_at(t) == flat.params_at(t)


class TestSupplyDisruption:
    def test_window_inclusive_both_ends(self):
        schedule = supply_disruption()
        assert schedule.params_at(121) == (10.0, 0.02)
        assert schedule.params_at(122) == (10.0, 0.15)
        assert schedule.params_at(244) == (10.0, 0.15)
        assert schedule.params_at(245) == (10.0, 0.02)

    def test_agrees_with_stationary_outside_window(self):
        disrupted, flat = supply_disruption(), stationary()
        for t in list(range(1, 122)) + list(range(245, 366)):
            assert disrupted.params_at(t) == flat.params_at(t)


class TestShockMagnitudeVariants:
    @pytest.mark.parametrize("magnitude", [15.0, 20.0, 25.0])
    def test_variant_shocks_at_183(self, magnitude):
        schedule = shock_magnitude_variant(magnitude)
        assert schedule.params_at(182)[0] == 10.0
        assert schedule.params_at(183)[0] == magnitude

    def test_magnitude_10_degenerates_to_stationary_rates(self):
        schedule = shock_magnitude_variant(10.0)
        flat = stationary()
        for t in range(1, 366):
            assert schedule.params_at(t) == flat.params_at(t)

    def test_nonpositive_magnitude_rejected(self):
        with pytest.raises(InvalidParameterError):
            shock_magnitude_variant(0.0)


class TestCustom:
    def test_segments_override_base(self):
        schedule = custom(((1, 100, 5.0, 0.01), (200, 300, 30.0, 0.5)))
        assert schedule.params_at(50) == (5.0, 0.01)
        assert schedule.params_at(150) == (10.0, 0.02)  # base values
        assert schedule.params_at(250) == (30.0, 0.5)

    def test_purity(self):
        schedule = custom(((10, 20, 7.0, 0.1),))
        assert schedule.params_at(15) == schedule.params_at(15)
        assert schedule == custom(((10, 20, 7.0, 0.1),))

    @pytest.mark.parametrize(
        "segment",
        [(0, 10, 5.0, 0.02), (10, 5, 5.0, 0.02), (1, 10, -1.0, 0.02), (1, 10, 5.0, 1.5)],
    )
    def test_bad_segments_rejected(self, segment):
        with pytest.raises(InvalidParameterError):
            custom((segment,))


class TestLookup:
    def test_names(self):
        assert by_name("stationary").name == "stationary"
        assert by_name("demand-shock").shock_period == 183
        assert by_name("supply-disruption").disruption_window == (122, 244)

    def test_unknown_name(self):
        with pytest.raises(InvalidParameterError):
            by_name("volcano")
