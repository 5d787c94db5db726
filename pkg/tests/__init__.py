"""Tests for pre-commit-starter."""
