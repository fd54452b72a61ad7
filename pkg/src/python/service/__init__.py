"""Service Layer Package"""