"""Config parsing: defaults, validation messages, and round-trip stability."""

import pytest

from adaptive_inv import ConfigurationError, PolicyParams
from adaptive_inv.config import RunConfig, load_config, parse_config, serialize_config


class TestDefaults:
    def test_empty_text_yields_shipped_defaults(self):
        config = parse_config("")
        assert config.horizon == 365
        assert config.n_reps == 30
        assert (config.holding_cost, config.stockout_cost, config.fixed_order_cost) == (1.0, 10.0, 5.0)
        assert (config.baseline_s, config.baseline_S) == (25, 50)
        assert config.update_period == 7
        assert config.optimizer_samples == 1000
        assert config.planning_horizon == 50
        assert config.lead_time_p == 0.8
        assert (config.prior_demand_shape, config.prior_demand_rate) == (10.0, 1.0)
        assert (config.prior_disruption_alpha, config.prior_disruption_beta) == (1.0, 49.0)

    def test_partial_override_keeps_other_defaults(self):
        config = parse_config("horizon = 100\nseed = 7\n")
        assert config.horizon == 100
        assert config.seed == 7
        assert config.n_reps == 30

    def test_comments_and_blank_lines(self):
        config = parse_config("# a comment\n\nhorizon = 10  # trailing\n")
        assert config.horizon == 10

    def test_default_grid_bounds(self):
        grid = parse_config("").grid()
        assert len(grid) == 247
        assert PolicyParams(25, 50) in grid


class TestValidation:
    def test_unknown_key_is_line_numbered(self):
        with pytest.raises(ConfigurationError, match="line 3"):
            parse_config("horizon = 10\nseed = 1\nwibble = 2\n")

    def test_bad_integer_is_line_numbered(self):
        with pytest.raises(ConfigurationError, match="line 1"):
            parse_config("horizon = soon\n")

    def test_missing_equals(self):
        with pytest.raises(ConfigurationError, match="line 2"):
            parse_config("horizon = 10\njust words\n")

    def test_degenerate_costs_rejected(self):
        with pytest.raises(ConfigurationError, match="stockout_cost"):
            parse_config("stockout_cost = 1\nholding_cost = 2\n")

    def test_bad_scenario_name(self):
        with pytest.raises(ConfigurationError, match="scenario"):
            parse_config("scenario = tsunami\n")

    def test_lead_time_probability_range(self):
        with pytest.raises(ConfigurationError, match="lead_time_p"):
            parse_config("lead_time_p = 1.5\n")

    def test_negative_horizon(self):
        with pytest.raises(ConfigurationError, match="horizon"):
            parse_config("horizon = 0\n")

    def test_bad_optimizer_mode(self):
        with pytest.raises(ConfigurationError, match="mode must be"):
            parse_config("optimizer_mode = psychic\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="cannot read"):
            load_config(tmp_path / "absent.cfg")

    def test_invalid_baseline_pair(self):
        with pytest.raises(ConfigurationError):
            parse_config("baseline_s = 50\nbaseline_S = 50\n")


class TestSegments:
    def test_segments_parse_and_build_custom_schedule(self):
        text = "scenario = custom\nsegment = 1:100 5 0.01\nsegment = 101:200 20 0.3\n"
        config = parse_config(text)
        schedule = config.schedule()
        assert schedule.params_at(50) == (5.0, 0.01)
        assert schedule.params_at(150) == (20.0, 0.3)
        assert schedule.params_at(250) == (10.0, 0.02)

    def test_custom_without_segments_rejected(self):
        with pytest.raises(ConfigurationError, match="segment"):
            parse_config("scenario = custom\n").schedule()

    @pytest.mark.parametrize(
        "segment", ["segment = 1-10 5 0.1", "segment = 0:10 5 0.1", "segment = 1:10 5"]
    )
    def test_malformed_segments(self, segment):
        with pytest.raises(ConfigurationError, match="line 1"):
            parse_config(segment + "\n")


class TestRoundTrip:
    def test_parse_serialize_parse_is_identity(self):
        original = parse_config(
            "horizon = 123\nseed = 42\nholding_cost = 0.5\nscenario = demand-shock\n"
            "segment = 5:9 2.5 0.125\nout_dir = elsewhere\n"
        )
        text = serialize_config(original)
        assert parse_config(text) == original

    def test_serialization_idempotent_bytes(self):
        config = parse_config("lead_time_p = 0.8\nstockout_cost = 12.5\n")
        once = serialize_config(config)
        twice = serialize_config(parse_config(once))
        assert once == twice

    def test_defaults_round_trip(self):
        assert parse_config(serialize_config(RunConfig())) == RunConfig()


class TestDerivedBuilders:
    def test_schedule_overrides_flow_through(self):
        config = parse_config("shock_lambda = 30\nshock_period = 50\n")
        schedule = config.schedule("demand-shock")
        assert schedule.params_at(49)[0] == 10.0
        assert schedule.params_at(50)[0] == 30.0

    def test_disruption_window_flows_through(self):
        config = parse_config(
            "disruption_alpha = 0.4\ndisruption_window_start = 10\ndisruption_window_end = 20\n"
        )
        schedule = config.schedule("supply-disruption")
        assert schedule.params_at(10)[1] == 0.4
        assert schedule.params_at(21)[1] == 0.02

    def test_experiment_setup_carries_everything(self):
        config = parse_config("update_period = 14\noptimizer_samples = 5\nplanning_horizon = 9\n")
        setup = config.experiment_setup()
        assert setup.update_period == 14
        assert setup.optimizer_config.num_samples == 5
        assert setup.optimizer_config.planning_horizon == 9
