public class Main {
    public static void main(String[] args) {
        int[][] g = new int[5][5];                       // v1 s1
        int found = -1;                                  // v2 s2
        search:                                          // labeled s3
        for (int i = 0; i < 5; i++) {                    // loop1 v3 s4
            for (int j = 0; j < 5; j++) {                // loop2 v4 s5
                if (g[i][j] == 1) {                      // if1 s6
                    found = i;                           // s7
                    break search;                        // break1 s8
                }
                if (j > i) continue search;              // if2 s9, continue s10
            }
        }
        System.out.println(found);                       // s11
    }
}
