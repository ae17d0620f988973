"""Command modules for the pfcft CLI."""
