"""Design and enumeration of weighted voting games."""
