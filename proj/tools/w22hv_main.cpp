#include <cstdio>
int main() { std::puts("w22hv cli placeholder"); return 0; }
