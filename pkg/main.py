import os
import sys

from app import create_app
from config import Settings


def run_app():
    settings = Settings.from_env()
    if 'HYPERTEN_LOG_LEVEL' not in os.environ:
        settings = settings.override(log_level='INFO')
    app = create_app(settings)
    port = int(os.environ.get('PORT', 5000))

    print("=" * 60)
    print("   HYPERGRAPH SPECTRAL REPORT SERVICE".center(60))
    print("=" * 60)
    print(f"POST edge lists to: http://localhost:{port}/spectra/report")
    print("=" * 60)

    app.run(host='127.0.0.1', port=port, threaded=True)


if __name__ == '__main__':
    try:
        run_app()
    except Exception as e:
        print(f"Error: {str(e)}")
        sys.exit(1)
