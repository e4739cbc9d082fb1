// Placeholder during bring-up; the real CLI lands with the audit module.
int main() { return 0; }
