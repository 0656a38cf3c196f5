# Puts src/ on sys.path when pytest collects tests/
