#include <stdio.h>

int main(void) {
  int slots[6] = {0};
  int writes = 0;
  for (int i = 0; i < 20; i++) {
    slots[i % 6] += i;
    writes++;
  }
  int checksum = 0;
  for (int i = 0; i < 6; i++) checksum ^= slots[i] * (i + 1);
  printf("%d %d\n", writes, checksum);
  return 0;
}
