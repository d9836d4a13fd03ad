# Keeps this directory importable so tests can share plain helper modules.
