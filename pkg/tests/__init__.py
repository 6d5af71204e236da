"""Tests for Google Meet agent."""
