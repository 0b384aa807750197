"""Unit test package for wrtkernel."""
