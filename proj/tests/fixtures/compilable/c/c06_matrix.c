#include <stdio.h>

#define N 3

typedef double Matrix[N][N];

static void multiply(Matrix a, Matrix b, Matrix out) {
  for (int i = 0; i < N; i++)
    for (int j = 0; j < N; j++) {
      double sum = 0.0;
      for (int k = 0; k < N; k++) sum += a[i][k] * b[k][j];
      out[i][j] = sum;
    }
}

int main(void) {
  Matrix a = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  Matrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Matrix r;
  multiply(a, id, r);
  printf("%.0f\n", r[2][1]);
  return 0;
}
