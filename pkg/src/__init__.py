"""Fidelity susceptibility of the Lipkin-Meshkov-Glick model."""
