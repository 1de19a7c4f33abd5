# Test package for the shuffle engine
