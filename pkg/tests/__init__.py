"""Test package for Innomight Labs CLI."""
