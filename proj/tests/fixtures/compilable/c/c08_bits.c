#include <stdint.h>
#include <stdio.h>

static int popcount(uint32_t v) {
  int count = 0;
  while (v) {
    v &= v - 1;
    count++;
  }
  return count;
}

int main(void) {
  uint32_t mask = 0xF0F0u;
  uint32_t flipped = ~mask & 0xFFFFu;
  printf("%d %d\n", popcount(mask), popcount(flipped << 1));
  return 0;
}
