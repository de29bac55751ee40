#include <cstdio>

int main() {
    std::puts("qdsindex: placeholder");
    return 0;
}
