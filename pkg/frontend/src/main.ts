// Entry point: the page is served from /ui on the engine itself, so
// the API lives on the same origin.

import { ApiClient } from './api.js';
import { App } from './app.js';

new App(document, new ApiClient(''));
