"""Bundled example systems; importing this package fills the registries."""

from . import (chains, interval, odometer, shells, sturmian, thuemorse,
               toeplitz)

__all__ = ["chains", "interval", "odometer", "shells", "sturmian",
           "thuemorse", "toeplitz"]
