"""Tests for the weakjacobi toolkit."""

from __future__ import annotations
