"""Tests for the relcurv library."""
