"""Configuration module for FreqBrain."""

from freq_brain.config.settings import EnvironmentSettings, RunConfig, get_default_config

__all__ = ["EnvironmentSettings", "RunConfig", "get_default_config"]
