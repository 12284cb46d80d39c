#include <stdio.h>

#define W 5
#define H 4

int main(void) {
  int grid[H][W];
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++) grid[y][x] = (x + y) % 3;
  int zeros = 0;
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++)
      if (grid[y][x] == 0) zeros++;
  printf("%d\n", zeros);
  return 0;
}
