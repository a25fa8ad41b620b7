"""Tests for the validation module."""
