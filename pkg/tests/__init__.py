"""Test suite for ThinkOnlyOnce."""
