"""Tests for the magic-fiber library."""
