"""Numerics for additively twisted GL(3) coefficient sums: Dirichlet
decomposition of the twist, Kloosterman sums, the Voronoi integral
transforms with their saddle-point analysis, and direct/dual sum
experiments with envelope comparisons."""

__version__ = "0.1.0"

from .diophantine import RationalApproximation, choose_Q, dirichlet_approx
from .forms import (EisensteinForm, GL2EigenvalueTable, InsufficientDataError,
                    LanglandsParams, SymSquareForm, analytic_conductor,
                    ingest_gl2_table)
from .sums import (SumExperiment, SumMode, VoronoiReport, direct_sum,
                   dual_sum, exponent_fit)
from .transform import GammaQuotientSpec, psi_k_contour, psi_k_grid, psi_pm
from .window import ModulatedWindow, direct_I, saddle_I
