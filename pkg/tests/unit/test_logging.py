"""Tests for structured logging."""

from __future__ import annotations

import json
import logging

import pytest
import structlog

from ergodic_lab.core.logging import get_logger, setup_logging


def last_record(err: str) -> dict:
    return json.loads(err.strip().splitlines()[-1])


class TestSetupLogging:
    def test_root_logger_has_single_handler(self) -> None:
        setup_logging(env="dev")
        setup_logging(env="dev")
        assert len(logging.getLogger().handlers) == 1

    def test_level_applied(self) -> None:
        setup_logging(env="dev", level="warning")
        assert logging.getLogger().level == logging.WARNING

    def test_level_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("LOG_LEVEL", "ERROR")
        setup_logging(env="dev")
        assert logging.getLogger().level == logging.ERROR


class TestRecords:
    """Events reach stderr with their context; stdout stays free for data."""

    def test_prod_renders_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging(env="prod", level="INFO")
        get_logger("ergodic_lab.sampler.json_case").info("replica_finished", replica=2, seed=7)
        captured = capsys.readouterr()
        record = last_record(captured.err)
        assert record["event"] == "replica_finished"
        assert record["replica"] == 2
        assert record["seed"] == 7
        assert record["level"] == "info"
        assert record["service"] == "ergodic-lab"
        assert record["logger"] == "ergodic_lab.sampler.json_case"
        assert "timestamp" in record
        assert captured.out == ""

    def test_context_variables_merged(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging(env="prod", level="INFO")
        structlog.contextvars.bind_contextvars(command="entropy")
        try:
            get_logger("ergodic_lab.cli_commands.ctx_case").info("command_started")
        finally:
            structlog.contextvars.unbind_contextvars("command")
        assert last_record(capsys.readouterr().err)["command"] == "entropy"

    def test_dev_renders_console(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging(env="dev", level="INFO")
        get_logger("ergodic_lab.entropy.dev_case").info("entropy_table_built", n_max=4)
        captured = capsys.readouterr()
        assert "entropy_table_built" in captured.err
        assert "n_max" in captured.err
        assert captured.out == ""

    def test_below_level_dropped(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging(env="prod", level="WARNING")
        get_logger("ergodic_lab.smb.quiet_case").info("fk_profile_computed")
        assert capsys.readouterr().err == ""
