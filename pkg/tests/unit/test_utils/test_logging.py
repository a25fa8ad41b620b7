"""Tests for logger setup."""

from loguru import logger
import pytest

from ghf_lattice.utils.logging import setup_logger


@pytest.mark.unit
class TestSetupLogger:
    """Tests for setup_logger."""

    def test_level_filters_records(self, capsys):
        """Test that records below the configured level are dropped."""
        setup_logger(level="WARNING")
        try:
            logger.info("solver chatter")
            logger.warning("anneal branch switch")
        finally:
            setup_logger()
        out = capsys.readouterr().out
        assert "anneal branch switch" in out
        assert "solver chatter" not in out

    def test_custom_format(self, capsys):
        """Test that the format string is applied."""
        setup_logger(level="INFO", format_string="[{level}] {message}")
        try:
            logger.info("plain")
        finally:
            setup_logger()
        assert "[INFO] plain" in capsys.readouterr().out
