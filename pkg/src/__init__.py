"""ResamplePilot: GP oversampling and granular-ball undersampling for imbalanced data."""
