"""Unit test package for indcluster."""
