// Placeholder entry point; the subcommand surface lands with the CLI module.
int main() { return 2; }
