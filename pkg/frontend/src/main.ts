import { createApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
void createApp(root).catch((error) => {
  root.textContent = `failed to load project: ${String(error)}`;
});
