"""Exact distinguishing parameters of oriented graphs."""

__version__ = "0.1.0"
