import logging

from django.apps import AppConfig

logger = logging.getLogger(__name__)


class V1Config(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hgm.V1'
    label = 'hgm_v1'
    verbose_name = 'Hypergeometric K3 verifiers'

    def ready(self):
        from django.conf import settings

        if settings.HGMK3_PRECISION < 53:
            logger.warning("HGMK3_PRECISION=%s is below double precision; Gauss tables may not round",
                           settings.HGMK3_PRECISION)
