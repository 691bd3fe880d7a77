# Hypergraph spectral toolkit: parsing, tensors, solvers, bounds, certificates
