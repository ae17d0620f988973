"""Test suite for pfcft."""
