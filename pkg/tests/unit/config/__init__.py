"""Config unit tests."""
