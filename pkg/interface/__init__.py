"""Command-line surface for quiverlab."""
