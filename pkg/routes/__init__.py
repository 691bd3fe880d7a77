# HTTP blueprints for the spectral report service
