"""Utility modules for the pfcft CLI."""
