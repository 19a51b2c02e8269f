// Placeholder main; the full CLI is wired after the library stabilizes.
int main() { return 0; }
