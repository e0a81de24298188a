# Puts the repository root on sys.path so pytest resolves the top-level packages.
