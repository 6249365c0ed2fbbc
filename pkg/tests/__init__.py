"""Tests for the Stark l-bit toolkit."""
