import { ApiClient } from './api';
import { createApp } from './app';

createApp(document.getElementById('app')!, new ApiClient(''));
