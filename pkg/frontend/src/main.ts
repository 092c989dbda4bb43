import { bootApp } from "./ui.js";

const params = new URLSearchParams(window.location.search);
void bootApp(document, params.get("api") ?? "");
