"""Integer feasibility models for the complement of a hypothetical strictly Neumaier graph."""
from __future__ import annotations

from .campaign import CampaignOptions, CampaignReport, Verdict, run_campaign
from .model import BranchSense, IlpModel, build_model
from .solver import Outcome, solve_feasibility

__all__ = ["CampaignOptions", "CampaignReport", "Verdict", "run_campaign", "BranchSense",
           "IlpModel", "build_model", "Outcome", "solve_feasibility"]
