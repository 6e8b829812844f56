'''core package – business logic'''
