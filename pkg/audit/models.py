from django.db import models


class RunLog(models.Model):
    command=models.CharField(max_length=64)
    argv=models.JSONField(default=list)
    exit_status=models.IntegerField()
    elapsed_ms=models.IntegerField(default=0)
    report=models.JSONField(default=dict,blank=True)
    timestamp=models.DateTimeField(auto_now_add=True)

    def __str__(self):
        return f'{self.command} -> {self.exit_status} at {self.timestamp}'

    class Meta:
        ordering = ['-timestamp', '-id']
