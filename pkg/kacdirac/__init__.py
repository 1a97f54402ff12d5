# kacdirac/__init__.py
