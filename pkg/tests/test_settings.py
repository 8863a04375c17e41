#!/usr/bin/env python3
"""
Test config.settings
Environment-driven defaults and the ball cap read on every call
"""
import os
import sys

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from config import settings  # noqa: E402


def test_summarize_lists_every_variable():
    """Every SLANT_* variable appears in the summary"""
    summary = settings.summarize()
    assert set(summary) == {
        "SLANT_BALL_CAP",
        "SLANT_SEED",
        "SLANT_RES_RADIUS",
        "SLANT_RADIUS",
        "SLANT_WORKERS",
        "SLANT_GENERICITY_RETRIES",
        "SLANT_LOG_LEVEL",
    }
    assert summary["SLANT_SEED"] == settings.DEFAULT_SEED
    assert summary["SLANT_LOG_LEVEL"] == settings.LOG_LEVEL


def test_defaults_are_sane():
    """Radii and retries are usable without a .env"""
    assert settings.DEFAULT_RES_RADIUS >= 1
    assert settings.DEFAULT_RADIUS >= 1
    assert settings.DEFAULT_WORKERS >= 1
    assert settings.GENERICITY_RETRIES >= 0


def test_ball_cap_follows_environment(monkeypatch):
    """SLANT_BALL_CAP is re-read on each call"""
    monkeypatch.setenv("SLANT_BALL_CAP", "17")
    assert settings.ball_cap() == 17
    assert settings.summarize()["SLANT_BALL_CAP"] == 17
    monkeypatch.delenv("SLANT_BALL_CAP")
    assert settings.ball_cap() == settings.BALL_CAP
