"""Source package."""

