import logging

from flask import Flask

from config import Settings, configure_logging


def create_app(settings: Settings = None):
    settings = settings or Settings.from_env()
    configure_logging(settings.log_level)

    app = Flask(__name__)
    app.config["HYPERTEN_SETTINGS"] = settings
    app.config["MAX_CONTENT_LENGTH"] = 16 * 1024 * 1024  # 16MB max edge list

    from routes.spectra import spectra_bp
    app.register_blueprint(spectra_bp, url_prefix='/spectra')

    logging.info(f"Spectral report service ready (threads={settings.threads}, tol={settings.tol})")
    return app
