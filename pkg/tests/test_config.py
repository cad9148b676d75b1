import os

import pytest

from herdisc.config import (
    Config,
    ConfigError,
    ContractViolationError,
    FileProcessingError,
    RetryLimitError,
    display_config,
    setup_logging,
)
from herdisc.config.logging_config import cleanup_old_log_files


class TestParseSizes:
    def test_list(self):
        assert Config.parse_sizes("200x200, 10000x2000") == [(200, 200), (10000, 2000)]

    def test_benchmark_preset(self):
        assert Config.parse_sizes("benchmark") == Config.BENCHMARK_SIZES

    @pytest.mark.parametrize("text", ["", "200", "200x", "ax3", "0x5", "2x3x4"])
    def test_malformed(self, text):
        with pytest.raises(ConfigError) as excinfo:
            Config.parse_sizes(text)
        assert excinfo.value.config_key == "sizes"


class TestSettings:
    def test_oracle_budget(self):
        assert Config.get_oracle_budget('disc') == Config.ORACLE_MAX_N_DISC
        with pytest.raises(ConfigError):
            Config.get_oracle_budget('herdisc2')

    def test_singleton(self):
        assert Config.get_instance() is Config.get_instance()

    def test_settings_are_serializable(self):
        settings = Config.get_all_settings()
        assert settings['PARTIAL_COLORING_RETRY_LIMIT'] == 300
        assert 'get_log_dir' not in settings

    def test_display(self, capsys):
        display_config(Config)
        out = capsys.readouterr().out
        assert "ORACLE_MAX_N_DISC" in out


class TestLogging:
    def test_log_file_in_configured_directory(self, tmp_path):
        log_file = setup_logging(log_dir=str(tmp_path))
        assert os.path.dirname(log_file) == str(tmp_path)
        assert os.path.exists(log_file)

    def test_cleanup_keeps_newest(self, tmp_path):
        for i in range(5):
            path = tmp_path / f"herdisc_{i}.log"
            path.write_text("x")
            os.utime(path, (i, i))
        cleanup_old_log_files(str(tmp_path), max_files=2)
        assert sorted(p.name for p in tmp_path.iterdir()) == ["herdisc_3.log", "herdisc_4.log"]


class TestExceptions:
    def test_context_in_message(self):
        assert str(ConfigError("bad", config_key="k", config_value=3)) == "bad (config key: k)"
        assert str(ContractViolationError("bad", operation="partial_coloring")) == \
            "bad (operation: partial_coloring)"
        error = FileProcessingError("bad", filename="a.mat", line_number=4)
        assert str(error) == "bad (file: a.mat, line: 4)"
        assert str(RetryLimitError("stuck", round_number=2, retries=300)) == \
            "stuck (round: 2, retries: 300)"

    def test_contract_violation_is_value_error(self):
        with pytest.raises(ValueError):
            raise ContractViolationError("bad")
